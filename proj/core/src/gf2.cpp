#include "kdp/gf2.hpp"

#include <map>
#include <mutex>

namespace kdp {
namespace {

using Poly = std::vector<std::uint64_t>;  // bit i of word w = coeff of x^(64w+i)

int degree_of(const Poly& p) {
    for (int w = static_cast<int>(p.size()) - 1; w >= 0; --w)
        if (p[w]) return 64 * w + 63 - __builtin_clzll(p[w]);
    return -1;
}

bool get_bit(const Poly& p, unsigned i) {
    unsigned w = i >> 6;
    return w < p.size() && ((p[w] >> (i & 63)) & 1u);
}

void set_bit(Poly& p, unsigned i) {
    unsigned w = i >> 6;
    if (w >= p.size()) p.resize(w + 1, 0);
    p[w] |= std::uint64_t{1} << (i & 63);
}

void xor_shifted(Poly& a, const Poly& b, unsigned shift) {
    unsigned wordshift = shift >> 6, bitshift = shift & 63;
    std::size_t need = b.size() + wordshift + 1;
    if (a.size() < need) a.resize(need, 0);
    for (std::size_t i = 0; i < b.size(); ++i) {
        a[i + wordshift] ^= b[i] << bitshift;
        if (bitshift && i + wordshift + 1 < a.size())
            a[i + wordshift + 1] ^= b[i] >> (64 - bitshift);
    }
}

Poly poly_mul(const Poly& a, const Poly& b) {
    int da = degree_of(a), db = degree_of(b);
    if (da < 0 || db < 0) return Poly{};
    Poly r((da + db) / 64 + 2, 0);
    for (int i = 0; i <= da; ++i)
        if (get_bit(a, i)) xor_shifted(r, b, i);
    return r;
}

void poly_mod(Poly& a, const Poly& f) {
    int df = degree_of(f);
    int da = degree_of(a);
    while (da >= df) {
        xor_shifted(a, f, da - df);
        // xor_shifted may extend but top bit is cancelled
        da = degree_of(a);
    }
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f) {
    Poly r = poly_mul(a, b);
    poly_mod(r, f);
    return r;
}

Poly poly_gcd(Poly a, Poly b) {
    while (degree_of(b) >= 0) {
        poly_mod(a, b);
        std::swap(a, b);
    }
    return a;
}

} // namespace

bool is_irreducible(const Poly& f, unsigned degree) {
    if (degree == 0) return false;
    // x^(2^degree) == x (mod f)
    Poly h;  // h = x
    set_bit(h, 1);
    std::vector<Poly> frob;  // h after j squarings
    for (unsigned j = 0; j < degree; ++j) {
        frob.push_back(h);
        h = poly_mulmod(h, h, f);
        // early reject: a factor of degree dividing j+1 shows up in
        // gcd(x^(2^(j+1)) + x, f); an irreducible f of higher degree cannot
        if (j + 1 < degree && j < 16) {
            Poly g = h;
            if (g.empty()) g.resize(1, 0);
            g[0] ^= 2;
            if (degree_of(poly_gcd(g, f)) > 0) return false;
        }
    }
    {
        Poly hx = h;  // h + x must vanish mod f
        if (hx.empty()) hx.resize(1, 0);
        hx[0] ^= 2;
        poly_mod(hx, f);
        if (degree_of(hx) >= 0) return false;
    }
    // gcd(x^(2^(degree/q)) - x, f) == 1 for each prime q | degree
    unsigned n = degree;
    std::vector<unsigned> primes;
    for (unsigned q = 2; q * q <= n; ++q)
        if (n % q == 0) { primes.push_back(q); while (n % q == 0) n /= q; }
    if (n > 1) primes.push_back(n);
    for (unsigned q : primes) {
        Poly g = frob[degree / q];
        if (g.size() < 1) g.resize(1, 0);
        g[0] ^= 2;  // g = x^(2^(degree/q)) + x
        Poly d = poly_gcd(g, f);
        if (degree_of(d) != 0) return false;
    }
    return true;
}

Poly smallest_irreducible(unsigned degree) {
    if (degree < 1 || degree > 512)
        throw std::invalid_argument("smallest_irreducible: degree out of [1,512]");
    // candidates: x^degree + t, t scanned as an integer from 0
    for (std::uint64_t t = 0;; ++t) {
        // degree >= 2: skip multiples of x (even t) and of x+1 (odd weight
        // including the leading term means f(1) = 1)
        if (degree >= 2 && ((t & 1) == 0 || (__builtin_parityll(t) ^ 1) == 0))
            continue;
        Poly f;
        set_bit(f, degree);
        for (unsigned i = 0; i < 64 && i < degree; ++i)
            if ((t >> i) & 1) set_bit(f, i);
        if (is_irreducible(f, degree)) return f;
    }
}

namespace {
const Poly& cached_modulus(unsigned width) {
    static std::map<unsigned, Poly> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(width);
    if (it == cache.end())
        it = cache.emplace(width, smallest_irreducible(width)).first;
    return it->second;
}
} // namespace

GF2Field::GF2Field(unsigned width) : width_(width) {
    if (width < 1 || width > 512)
        throw std::invalid_argument("GF2Field: width out of [1,512]");
    modulus_ = cached_modulus(width);
}

std::vector<std::uint64_t> GF2Field::mul(const Poly& a, const Poly& b) const {
    return poly_mulmod(a, b, modulus_);
}

BitString GF2Field::mul(const BitString& a, const BitString& b) const {
    if (a.size() != width_ || b.size() != width_)
        throw std::invalid_argument("GF2Field::mul: width mismatch");
    Poly pa(a.words().begin(), a.words().end());
    Poly pb(b.words().begin(), b.words().end());
    Poly r = poly_mulmod(pa, pb, modulus_);
    BitString out(width_);
    for (unsigned i = 0; i < width_; ++i)
        if (get_bit(r, i)) out.set(i, true);
    return out;
}

BitString GF2Field::one() const {
    BitString b(width_);
    b.set(0, true);
    return b;
}

BitString GF2Field::pow(const BitString& a, std::uint64_t e) const {
    BitString r = one(), base = a;
    while (e) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

} // namespace kdp
