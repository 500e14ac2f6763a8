// Copyright (c) 2026 the mrfdiph authors
// SPDX-License-Identifier: Apache-2.0
#include "mrfdiph/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace mrf {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
        ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
        --e;
    return s.substr(b, e - b);
}

int parse_int(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const int out = std::stoi(v, &pos);
        if (pos != v.size())
            throw std::invalid_argument(v);
        return out;
    } catch (const std::exception&) {
        throw config_error("config: bad integer for key '" + key + "': " + v);
    }
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const unsigned long long out = std::stoull(v, &pos);
        if (pos != v.size())
            throw std::invalid_argument(v);
        return out;
    } catch (const std::exception&) {
        throw config_error("config: bad seed for key '" + key + "': " + v);
    }
}

double parse_real(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double out = std::stod(v, &pos);
        if (pos != v.size())
            throw std::invalid_argument(v);
        return out;
    } catch (const std::exception&) {
        throw config_error("config: bad number for key '" + key + "': " + v);
    }
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "on" || v == "yes")
        return true;
    if (v == "false" || v == "0" || v == "off" || v == "no")
        return false;
    throw config_error("config: bad boolean for key '" + key + "': " + v);
}

// "lo:hi:count:lin" or "lo:hi:count:log"
GridSpec parse_grid(const std::string& key, const std::string& v) {
    std::istringstream in(v);
    std::string part;
    std::vector<std::string> parts;
    while (std::getline(in, part, ':'))
        parts.push_back(part);
    if (parts.size() != 4)
        throw config_error("config: key '" + key + "' wants lo:hi:count:{lin|log}, got " + v);
    GridSpec g;
    g.lo = parse_real(key, parts[0]);
    g.hi = parse_real(key, parts[1]);
    g.count = parse_int(key, parts[2]);
    if (parts[3] == "lin")
        g.spacing = GridSpacing::Linear;
    else if (parts[3] == "log")
        g.spacing = GridSpacing::Log;
    else
        throw config_error("config: key '" + key + "' spacing must be lin or log, got " + parts[3]);
    return g;
}

} // namespace

void ExperimentConfig::set_key_value(const std::string& key, const std::string& value) {
    if (key == "phantom.h")
        phantom_h = parse_int(key, value);
    else if (key == "phantom.w")
        phantom_w = parse_int(key, value);
    else if (key == "phantom.seed")
        phantom_seed = parse_u64(key, value);
    else if (key == "seq.l")
        seq_l = parse_int(key, value);
    else if (key == "seq.tr")
        seq_tr = parse_real(key, value);
    else if (key == "seq.te")
        seq_te = parse_real(key, value);
    else if (key == "seq.ti")
        seq_ti = parse_real(key, value);
    else if (key == "seq.flip_scheme")
        seq_flip_scheme = value;
    else if (key == "dict.t1_grid")
        dict_t1 = parse_grid(key, value);
    else if (key == "dict.t2_grid")
        dict_t2 = parse_grid(key, value);
    else if (key == "dict.s")
        dict_s = parse_int(key, value);
    else if (key == "acq.c")
        acq_c = parse_int(key, value);
    else if (key == "acq.R")
        acq_r = parse_real(key, value);
    else if (key == "acq.scheme")
        acq_scheme = value;
    else if (key == "acq.seed")
        acq_seed = parse_u64(key, value);
    else if (key == "sampler.T")
        sampler_t = parse_int(key, value);
    else if (key == "sampler.K")
        sampler_k = parse_int(key, value);
    else if (key == "sampler.lambda")
        sampler_lambda = parse_real(key, value);
    else if (key == "sampler.tau")
        sampler_tau = parse_real(key, value);
    else if (key == "sampler.xi")
        sampler_xi = parse_real(key, value);
    else if (key == "sampler.mode")
        sampler_mode = value;
    else if (key == "sampler.cg_iters")
        sampler_cg_iters = parse_int(key, value);
    else if (key == "sampler.cg_tol")
        sampler_cg_tol = parse_real(key, value);
    else if (key == "sampler.seed")
        sampler_seed = parse_u64(key, value);
    else if (key == "sampler.noise_source")
        sampler_noise_source = value;
    else if (key == "sampler.estimator.kind")
        estimator_kind = value;
    else if (key == "sampler.estimator.sigma_px")
        estimator_sigma_px = parse_real(key, value);
    else if (key == "sampler.estimator.conditioned")
        estimator_conditioned = parse_bool(key, value);
    else if (key == "recon.method")
        recon_method = value;
    else if (key == "out.dir")
        out_dir = value;
    else
        throw config_error("config: unknown key '" + key + "'");
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw io_error("cannot open config file: " + path);
    ExperimentConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error("config: line " + std::to_string(lineno) + " is not key = value");
        cfg.set_key_value(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cfg;
}

} // namespace mrf
