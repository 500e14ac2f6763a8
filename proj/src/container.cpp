// Copyright (c) 2026 the mrfdiph authors
// SPDX-License-Identifier: Apache-2.0
#include "mrfdiph/container.hpp"

#include <cstring>
#include <fstream>
#include <limits>

namespace mrf {

namespace {

constexpr char kMagic[4] = {'M', 'R', 'F', 'Q'};

void put_u16(std::ostream& out, std::uint16_t v) {
    const unsigned char b[2] = {static_cast<unsigned char>(v & 0xFF),
                                static_cast<unsigned char>((v >> 8) & 0xFF)};
    out.write(reinterpret_cast<const char*>(b), 2);
}

void put_u32(std::ostream& out, std::uint32_t v) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i)
        b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xFF);
    out.write(reinterpret_cast<const char*>(b), 4);
}

std::uint16_t take_u16(std::istream& in) {
    unsigned char b[2];
    in.read(reinterpret_cast<char*>(b), 2);
    return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
}

std::uint32_t take_u32(std::istream& in) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i)
        v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
    return v;
}

} // namespace

std::size_t dtype_size(Dtype d) {
    switch (d) {
    case Dtype::F32:
        return 4;
    case Dtype::C64:
        return 8;
    case Dtype::U8:
        return 1;
    }
    throw io_error("container: unknown dtype");
}

std::size_t ArrayEntry::elements() const {
    std::size_t n = 1;
    for (std::uint32_t d : dims)
        n *= d;
    return n;
}

void ArrayContainer::add(ArrayEntry entry) {
    if (entry.name.empty())
        throw io_error("container: entry name must be non-empty");
    if (entry.name.size() > std::numeric_limits<std::uint16_t>::max())
        throw io_error("container: entry name too long");
    if (has(entry.name))
        throw io_error("container: duplicate entry name '" + entry.name + "'");
    if (entry.raw.size() != entry.elements() * dtype_size(entry.dtype))
        throw io_error("container: payload size disagrees with dims for '" + entry.name + "'");
    entries_.push_back(std::move(entry));
}

void ArrayContainer::add_real(const std::string& name, std::vector<std::uint32_t> dims,
                              const double* values, std::size_t n) {
    ArrayEntry e;
    e.name = name;
    e.dtype = Dtype::F32;
    e.dims = std::move(dims);
    e.raw.resize(n * 4);
    for (std::size_t i = 0; i < n; ++i) {
        const float f = static_cast<float>(values[i]);
        std::memcpy(e.raw.data() + i * 4, &f, 4);
    }
    add(std::move(e));
}

void ArrayContainer::add_complex(const std::string& name, std::vector<std::uint32_t> dims,
                                 const cplx* values, std::size_t n) {
    ArrayEntry e;
    e.name = name;
    e.dtype = Dtype::C64;
    e.dims = std::move(dims);
    e.raw.resize(n * 8);
    for (std::size_t i = 0; i < n; ++i) {
        const float re = static_cast<float>(values[i].real());
        const float im = static_cast<float>(values[i].imag());
        std::memcpy(e.raw.data() + i * 8, &re, 4);
        std::memcpy(e.raw.data() + i * 8 + 4, &im, 4);
    }
    add(std::move(e));
}

void ArrayContainer::add_bytes(const std::string& name, std::vector<std::uint32_t> dims,
                               const std::uint8_t* values, std::size_t n) {
    ArrayEntry e;
    e.name = name;
    e.dtype = Dtype::U8;
    e.dims = std::move(dims);
    e.raw.assign(values, values + n);
    add(std::move(e));
}

bool ArrayContainer::has(const std::string& name) const {
    for (const auto& e : entries_)
        if (e.name == name)
            return true;
    return false;
}

const ArrayEntry& ArrayContainer::get(const std::string& name) const {
    for (const auto& e : entries_)
        if (e.name == name)
            return e;
    throw io_error("container: missing entry '" + name + "'");
}

std::vector<double> ArrayContainer::get_real(const std::string& name) const {
    const ArrayEntry& e = get(name);
    if (e.dtype != Dtype::F32)
        throw io_error("container: entry '" + name + "' is not f32");
    std::vector<double> out(e.elements());
    for (std::size_t i = 0; i < out.size(); ++i) {
        float f;
        std::memcpy(&f, e.raw.data() + i * 4, 4);
        out[i] = static_cast<double>(f);
    }
    return out;
}

std::vector<cplx> ArrayContainer::get_complex(const std::string& name) const {
    const ArrayEntry& e = get(name);
    if (e.dtype != Dtype::C64)
        throw io_error("container: entry '" + name + "' is not c64");
    std::vector<cplx> out(e.elements());
    for (std::size_t i = 0; i < out.size(); ++i) {
        float re, im;
        std::memcpy(&re, e.raw.data() + i * 8, 4);
        std::memcpy(&im, e.raw.data() + i * 8 + 4, 4);
        out[i] = cplx(re, im);
    }
    return out;
}

std::vector<std::uint8_t> ArrayContainer::get_bytes(const std::string& name) const {
    const ArrayEntry& e = get(name);
    if (e.dtype != Dtype::U8)
        throw io_error("container: entry '" + name + "' is not u8");
    return std::vector<std::uint8_t>(e.raw.begin(), e.raw.end());
}

void ArrayContainer::write_file(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw io_error("cannot open for writing: " + path);
    out.write(kMagic, 4);
    put_u16(out, kVersion);
    for (const auto& e : entries_) {
        put_u16(out, static_cast<std::uint16_t>(e.name.size()));
        out.write(e.name.data(), static_cast<std::streamsize>(e.name.size()));
        const std::uint8_t dtype = static_cast<std::uint8_t>(e.dtype);
        out.write(reinterpret_cast<const char*>(&dtype), 1);
        const std::uint8_t ndim = static_cast<std::uint8_t>(e.dims.size());
        out.write(reinterpret_cast<const char*>(&ndim), 1);
        for (std::uint32_t d : e.dims)
            put_u32(out, d);
        out.write(reinterpret_cast<const char*>(e.raw.data()),
                  static_cast<std::streamsize>(e.raw.size()));
    }
    if (!out)
        throw io_error("write failed: " + path);
}

ArrayContainer ArrayContainer::read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw io_error("cannot open for reading: " + path);
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0)
        throw io_error("not an array container: " + path);
    const std::uint16_t version = take_u16(in);
    if (!in || version != kVersion)
        throw io_error("unsupported container version in " + path);

    ArrayContainer c;
    while (true) {
        const int peeked = in.peek();
        if (peeked == std::char_traits<char>::eof())
            break;
        ArrayEntry e;
        const std::uint16_t name_len = take_u16(in);
        e.name.resize(name_len);
        in.read(e.name.data(), name_len);
        std::uint8_t dtype = 0, ndim = 0;
        in.read(reinterpret_cast<char*>(&dtype), 1);
        in.read(reinterpret_cast<char*>(&ndim), 1);
        if (!in)
            throw io_error("truncated entry header in " + path);
        if (dtype < 1 || dtype > 3)
            throw io_error("bad dtype in " + path);
        e.dtype = static_cast<Dtype>(dtype);
        e.dims.resize(ndim);
        for (int i = 0; i < ndim; ++i)
            e.dims[static_cast<std::size_t>(i)] = take_u32(in);
        if (!in)
            throw io_error("truncated dims in " + path);
        e.raw.resize(e.elements() * dtype_size(e.dtype));
        in.read(reinterpret_cast<char*>(e.raw.data()), static_cast<std::streamsize>(e.raw.size()));
        if (!in)
            throw io_error("truncated payload for '" + e.name + "' in " + path);
        c.add(std::move(e));
    }
    return c;
}

} // namespace mrf
