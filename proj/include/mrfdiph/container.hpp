// Copyright (c) 2026 the mrfdiph authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "mrfdiph/common.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace mrf {

// Minimal named-array file. Layout, all little-endian:
//   magic "MRFQ" | u16 version
//   then per entry until EOF:
//     u16 name length | name bytes (UTF-8)
//     u8 dtype (1 = f32, 2 = c64 interleaved f32 re/im, 3 = u8)
//     u8 ndim | ndim x u32 dims
//     payload, row-major, dims product x dtype size bytes

enum class Dtype : std::uint8_t { F32 = 1, C64 = 2, U8 = 3 };

std::size_t dtype_size(Dtype d);

struct ArrayEntry {
    std::string name;
    Dtype dtype = Dtype::F32;
    std::vector<std::uint32_t> dims;
    std::vector<unsigned char> raw;

    std::size_t elements() const;
};

class ArrayContainer {
  public:
    static constexpr std::uint16_t kVersion = 1;

    void add(ArrayEntry entry);
    void add_real(const std::string& name, std::vector<std::uint32_t> dims, const double* values,
                  std::size_t n);
    void add_complex(const std::string& name, std::vector<std::uint32_t> dims, const cplx* values,
                     std::size_t n);
    void add_bytes(const std::string& name, std::vector<std::uint32_t> dims,
                   const std::uint8_t* values, std::size_t n);

    bool has(const std::string& name) const;
    const ArrayEntry& get(const std::string& name) const;

    std::vector<double> get_real(const std::string& name) const;
    std::vector<cplx> get_complex(const std::string& name) const;
    std::vector<std::uint8_t> get_bytes(const std::string& name) const;

    const std::vector<ArrayEntry>& entries() const { return entries_; }

    void write_file(const std::string& path) const;
    static ArrayContainer read_file(const std::string& path);

  private:
    std::vector<ArrayEntry> entries_;
};

} // namespace mrf
