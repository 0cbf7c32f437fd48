// SPDX-License-Identifier: Apache-2.0
//
// kpcsim - limited-feedback FD-MIMO beamforming and link-level simulation toolkit
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "kpcsim/codebook.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace kpcsim {

namespace {

// exp(j 2 pi t / n) for t in [0, n)
Cvec unit_roots(int n) {
    Cvec roots(static_cast<std::size_t>(n));
    for (int t = 0; t < n; ++t)
        roots[static_cast<std::size_t>(t)] = std::polar(1.0, 2.0 * M_PI * t / n);
    return roots;
}

int mod_positive(int x, int n) {
    int r = x % n;
    if (r < 0)
        r += n;
    return r;
}

void check_codeword(const PskCodeword& cw) {
    if (cw.g.empty())
        throw std::invalid_argument("PskCodeword: empty index vector");
    if (cw.n_const < 2)
        throw std::invalid_argument("PskCodeword: constellation size must be >= 2");
}

} // namespace

PskCodeword canonicalize(const PskCodeword& cw) {
    check_codeword(cw);
    PskCodeword out;
    out.n_const = cw.n_const;
    out.g.resize(cw.g.size());
    const int base = cw.g.front();
    for (std::size_t k = 0; k < cw.g.size(); ++k)
        out.g[k] = mod_positive(cw.g[k] - base, cw.n_const);
    return out;
}

Cvec realize(const PskCodeword& cw) {
    check_codeword(cw);
    const Cvec roots = unit_roots(cw.n_const);
    Cvec x(cw.g.size());
    for (std::size_t k = 0; k < cw.g.size(); ++k)
        x[k] = roots[static_cast<std::size_t>(mod_positive(cw.g[k], cw.n_const))];
    return x;
}

Cvec psk_constellation(int n_const) {
    if (n_const < 2)
        throw std::invalid_argument("psk_constellation: constellation size must be >= 2");
    return unit_roots(n_const);
}

bool advance_codeword(std::vector<int>& g, int n_const) {
    for (std::size_t pos = g.size(); pos-- > 1;) {
        if (++g[pos] < n_const)
            return true;
        g[pos] = 0;
    }
    return false;
}

void CodebookSpec::validate() const {
    if (m_th < 1 || m_tv < 1)
        throw std::invalid_argument("CodebookSpec: factor lengths must be >= 1");
    if (n_h < 2 || n_v < 2)
        throw std::invalid_argument("CodebookSpec: constellation sizes must be >= 2");
    if (!std::has_single_bit(static_cast<unsigned>(n_h)) ||
        !std::has_single_bit(static_cast<unsigned>(n_v)))
        throw std::invalid_argument("CodebookSpec: constellation sizes must be powers of two");
}

KpcBeamformer kron_beamformer(const PskCodeword& g_h, const PskCodeword& g_v) {
    if (!g_h.is_canonical() || !g_v.is_canonical())
        throw std::invalid_argument("kron_beamformer: codewords must be canonical (g[0] == 0)");
    const Cvec xh = realize(g_h);
    const Cvec xv = realize(g_v);
    const int m_th = g_h.length();
    const int m_tv = g_v.length();
    const double scale = 1.0 / std::sqrt(static_cast<double>(m_th) * m_tv);

    KpcBeamformer bf;
    bf.g_h = g_h;
    bf.g_v = g_v;
    bf.w.resize(static_cast<std::size_t>(m_th) * m_tv);
    for (int n = 0; n < m_tv; ++n)
        for (int m = 0; m < m_th; ++m)
            bf.w[static_cast<std::size_t>(n * m_th + m)] =
                scale * xh[static_cast<std::size_t>(m)] * xv[static_cast<std::size_t>(n)];
    return bf;
}

std::uint64_t kpc_codebook_size(const CodebookSpec& spec, std::uint64_t cap) {
    spec.validate();
    long double count = 1.0L;
    for (int i = 1; i < spec.m_th; ++i)
        count *= spec.n_h;
    for (int i = 1; i < spec.m_tv; ++i)
        count *= spec.n_v;
    if (count > static_cast<long double>(cap)) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.0Lf", count);
        throw std::length_error(std::string("kpc_codebook_size: codebook has ") + buf +
                                " codewords, above the enumeration cap of " + std::to_string(cap));
    }
    return static_cast<std::uint64_t>(count);
}

std::vector<KpcBeamformer> enumerate_kpc(const CodebookSpec& spec, std::uint64_t cap) {
    const std::uint64_t count = kpc_codebook_size(spec, cap);
    std::vector<KpcBeamformer> out;
    out.reserve(static_cast<std::size_t>(count));

    PskCodeword gh{std::vector<int>(static_cast<std::size_t>(spec.m_th), 0), spec.n_h};
    do {
        PskCodeword gv{std::vector<int>(static_cast<std::size_t>(spec.m_tv), 0), spec.n_v};
        do {
            out.push_back(kron_beamformer(gh, gv));
        } while (advance_codeword(gv.g, spec.n_v));
    } while (advance_codeword(gh.g, spec.n_h));
    return out;
}

std::vector<Cvec> dft_codebook(int m, int oversample) {
    if (m < 1)
        throw std::invalid_argument("dft_codebook: m must be >= 1");
    if (oversample < 1)
        throw std::invalid_argument("dft_codebook: oversample must be >= 1");
    const int total = m * oversample;
    const double scale = 1.0 / std::sqrt(static_cast<double>(m));
    std::vector<Cvec> cb(static_cast<std::size_t>(total));
    for (int q = 0; q < total; ++q) {
        Cvec v(static_cast<std::size_t>(m));
        for (int k = 0; k < m; ++k)
            v[static_cast<std::size_t>(k)] =
                scale * std::polar(1.0, -2.0 * M_PI * k * q / total);
        cb[static_cast<std::size_t>(q)] = std::move(v);
    }
    return cb;
}

double verify_unitary_kron(int m_th, int m_tv) {
    if (m_th < 1 || m_tv < 1)
        throw std::invalid_argument("verify_unitary_kron: factor sizes must be >= 1");

    // The Gram of a unitary DFT matrix is circulant: row r of U U^H depends
    // only on the index difference (c - r) mod m, so one row describes the
    // whole product.
    auto gram_row = [](int m) {
        const Cvec roots = unit_roots(m);
        Cvec s(static_cast<std::size_t>(m));
        for (int d = 0; d < m; ++d) {
            std::complex<double> acc{0.0, 0.0};
            for (int t = 0; t < m; ++t)
                acc += roots[static_cast<std::size_t>((d * t) % m)];
            s[static_cast<std::size_t>(d)] = acc / static_cast<double>(m);
        }
        return s;
    };

    const Cvec sh = gram_row(m_th);
    const Cvec sv = gram_row(m_tv);

    // (U_H (x) U_V)(U_H (x) U_V)^H entry (r, c) = G_H[rh,ch] * G_V[rv,cv]
    // with r = rh*m_tv + rv. Accumulate |entry - delta(r,c)|^2 over all
    // M_t^2 entries.
    const int m_t = m_th * m_tv;
    double err2 = 0.0;
    for (int r = 0; r < m_t; ++r) {
        const int rh = r / m_tv;
        const int rv = r % m_tv;
        for (int c = 0; c < m_t; ++c) {
            const int ch = c / m_tv;
            const int cv = c % m_tv;
            std::complex<double> entry = sh[static_cast<std::size_t>(mod_positive(ch - rh, m_th))] *
                                         sv[static_cast<std::size_t>(mod_positive(cv - rv, m_tv))];
            if (r == c)
                entry -= 1.0;
            err2 += std::norm(entry);
        }
    }
    return std::sqrt(err2);
}

int feedback_bits(const CodebookSpec& spec) {
    spec.validate();
    const int bits_h = std::countr_zero(static_cast<unsigned>(spec.n_h));
    const int bits_v = std::countr_zero(static_cast<unsigned>(spec.n_v));
    return (spec.m_th - 1) * bits_h + (spec.m_tv - 1) * bits_v;
}

} // namespace kpcsim
