#include "fogran/gf256.hpp"

#include <array>
#include <utility>

namespace fogran::gf256 {

namespace {

struct Tables {
    std::array<std::uint8_t, 512> exp{};
    std::array<int, 256> log{};
    std::array<std::array<std::uint8_t, 256>, 256> prod{};
    Tables() {
        std::uint8_t x = 1;
        for (int i = 0; i < 255; ++i) {
            exp[i] = exp[i + 255] = x;
            log[x] = i;
            std::uint8_t x2 = static_cast<std::uint8_t>((x << 1) ^ ((x & 0x80) ? 0x1B : 0));
            x = static_cast<std::uint8_t>(x2 ^ x);  // multiply by 0x03
        }
        exp[510] = exp[0];
        exp[511] = exp[1];
        log[0] = -1;
        for (int a = 1; a < 256; ++a)
            for (int b = 1; b < 256; ++b) prod[a][b] = exp[log[a] + log[b]];
    }
};

const Tables& tables() {
    static const Tables t;
    return t;
}

}  // namespace

std::uint8_t mul(std::uint8_t a, std::uint8_t b) {
    return tables().prod[a][b];
}

std::uint8_t inv(std::uint8_t a) {
    const auto& t = tables();
    return a ? t.exp[255 - t.log[a]] : 0;
}

int rref(std::vector<std::uint8_t>& m, int rows, int cols, int ncoef, std::vector<int>* pivots) {
    // columns [0, ncoef) are eliminated; the remaining (e.g. a right-hand side) follow along
    const auto& t = tables();
    int r = 0;
    if (pivots) pivots->clear();
    for (int c = 0; c < ncoef && r < rows; ++c) {
        int sel = -1;
        for (int i = r; i < rows; ++i)
            if (m[i * cols + c]) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        if (sel != r)
            for (int k = 0; k < cols; ++k) std::swap(m[sel * cols + k], m[r * cols + k]);
        const auto& scale = t.prod[inv(m[r * cols + c])];
        std::uint8_t* pr = &m[r * cols];
        for (int k = c; k < cols; ++k) pr[k] = scale[pr[k]];
        for (int i = 0; i < rows; ++i) {
            std::uint8_t* pi = &m[i * cols];
            if (i == r || !pi[c]) continue;
            const auto& f = t.prod[pi[c]];
            for (int k = c; k < cols; ++k) pi[k] ^= f[pr[k]];
        }
        if (pivots) pivots->push_back(c);
        ++r;
    }
    return r;
}

int rank(std::vector<std::uint8_t> m, int rows, int cols) { return rref(m, rows, cols, cols); }

}  // namespace fogran::gf256
