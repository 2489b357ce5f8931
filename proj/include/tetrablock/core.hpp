#pragma once

// Exact index maps for discrete tetrahedral domains: the set of integer
// points 0 <= x <= y <= z < n, laid out as n stacked triangular layers.
// Everything here is integer-exact; floating point appears only as an
// initial guess that is immediately corrected against exact counts.

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace tetrablock {

using u64 = std::uint64_t;

// ---------------------------------------------------------------------------
// checked arithmetic

[[noreturn]] inline void throw_overflow(const char* what) {
    throw std::overflow_error(what);
}

inline u64 checked_add(u64 a, u64 b) {
    u64 r;
    if (__builtin_add_overflow(a, b, &r)) throw_overflow("u64 addition overflow");
    return r;
}

inline u64 checked_mul(u64 a, u64 b) {
    u64 r;
    if (__builtin_mul_overflow(a, b, &r)) throw_overflow("u64 multiplication overflow");
    return r;
}

inline u64 ceil_div(u64 a, u64 b) { return a / b + (a % b != 0 ? 1 : 0); }

// ---------------------------------------------------------------------------
// figurate numbers

// Largest m such that m(m+1)/2 fits in u64.
inline constexpr u64 kMaxTriArg = 6074000999ULL;
// Largest m such that m(m+1)(m+2)/6 fits in u64.
inline constexpr u64 kMaxTetraArg = 4801278ULL;
// tetra(kMaxTetraArg), frozen so tests can pin the boundary.
inline constexpr u64 kMaxTetraValue = 18446738006366306560ULL;

/// Triangular number m(m+1)/2 (elements in one triangular layer of side m).
inline u64 tri(u64 m) {
    if (m > kMaxTriArg) throw_overflow("tri(m) exceeds u64");
    return (m % 2 == 0) ? (m / 2) * (m + 1) : m * ((m + 1) / 2);
}

/// Tetrahedral number m(m+1)(m+2)/6 (elements in a pyramid of side m).
inline u64 tetra(u64 m) {
    if (m > kMaxTetraArg) throw_overflow("tetra(m) exceeds u64");
    u64 f0 = m, f1 = m + 1, f2 = m + 2;
    // Exactly one of three consecutive integers is divisible by 3, and
    // dividing it by 3 does not change its parity, so an even factor is
    // still present afterwards. The reduced product is the exact value.
    if (f0 % 3 == 0) f0 /= 3;
    else if (f1 % 3 == 0) f1 /= 3;
    else f2 /= 3;
    if (f0 % 2 == 0) f0 /= 2;
    else if (f1 % 2 == 0) f1 /= 2;
    else f2 /= 2;
    return f0 * f1 * f2;  // fits by the kMaxTetraArg guard
}

/// Largest domain side n for which tetra(n + 1) is still representable,
/// i.e. every rank as well as the one-past-the-end count fits in u64.
inline constexpr u64 max_supported_n() { return kMaxTetraArg - 1; }

// ---------------------------------------------------------------------------
// coordinates and domain shape

struct Coord3 {
    u64 x = 0;
    u64 y = 0;
    u64 z = 0;
    friend bool operator==(const Coord3&, const Coord3&) = default;
};

struct Coord2 {
    u64 x = 0;
    u64 y = 0;
    friend bool operator==(const Coord2&, const Coord2&) = default;
};

/// Membership test for the tetrahedral domain of side n.
inline bool in_pyramid(const Coord3& c, u64 n) {
    return c.x <= c.y && c.y <= c.z && c.z < n;
}

/// A tetrahedral domain: n triangular layers, layer z holding tri(z+1)
/// elements, tetra(n) elements in total.
struct PyramidShape {
    u64 n = 0;
    u64 element_count = 0;

    PyramidShape() = default;
    explicit PyramidShape(u64 side) : n(side), element_count(tetra(side)) {
        if (side > max_supported_n()) throw_overflow("domain side exceeds max_supported_n()");
    }

    bool contains(const Coord3& c) const { return in_pyramid(c, n); }
};

// ---------------------------------------------------------------------------
// forward map: coordinate -> rank (lexicographic in (z, y, x))

inline u64 rank3(const Coord3& c, const PyramidShape& shape) {
    if (!shape.contains(c)) throw std::domain_error("rank3: coordinate outside tetrahedral domain");
    return tetra(c.z) + tri(c.y) + c.x;
}

// ---------------------------------------------------------------------------
// inverse maps

namespace detail {

// tetra(m) > lambda, with unrepresentable tetra treated as +infinity.
inline bool tetra_exceeds(u64 m, u64 lambda) {
    return m > kMaxTetraArg || tetra(m) > lambda;
}

inline bool tri_exceeds(u64 m, u64 lambda) {
    return m > kMaxTriArg || tri(m) > lambda;
}

inline constexpr double kCbrt9 = 2.080083823051904;
inline constexpr double kCbrt3 = 1.4422495703074083;

}  // namespace detail

/// Layer index of rank lambda: the largest z with tetra(z) <= lambda.
/// Closed-form real root of the depressed cubic evaluated in double, then
/// corrected against exact tetra(); the correction never needs more than
/// two unit steps, anything beyond that is a logic error.
inline u64 unrank_layer(u64 lambda) {
    if (lambda == 0) return 0;  // the closed form is singular at 0
    const double lam = static_cast<double>(lambda);
    const double s = std::sqrt(729.0 * lam * lam - 3.0);
    const double t = std::cbrt(s + 27.0 * lam);
    const double v = t / detail::kCbrt9 + 1.0 / (detail::kCbrt3 * t) - 1.0;
    u64 z = v <= 0.0 ? 0 : static_cast<u64>(v);
    if (z > kMaxTetraArg) z = kMaxTetraArg;
    int steps = 0;
    while (detail::tetra_exceeds(z, lambda)) {  // overshoot: tetra(z) > lambda
        if (z == 0 || ++steps > 2) throw std::logic_error("unrank_layer: correction out of bounds");
        --z;
    }
    while (!detail::tetra_exceeds(z + 1, lambda)) {  // undershoot: tetra(z+1) <= lambda
        if (++steps > 2) throw std::logic_error("unrank_layer: correction out of bounds");
        ++z;
    }
    return z;
}

/// Position within a triangular layer: for a layer-local rank, the row y is
/// the largest value with tri(y) <= lambda2 and x is the remainder.
inline Coord2 unrank2(u64 lambda2) {
    const double r = std::sqrt(0.25 + 2.0 * static_cast<double>(lambda2)) - 0.5;
    u64 y = r <= 0.0 ? 0 : static_cast<u64>(r);
    if (y > kMaxTriArg) y = kMaxTriArg;
    int steps = 0;
    while (detail::tri_exceeds(y, lambda2)) {
        if (y == 0 || ++steps > 2) throw std::logic_error("unrank2: correction out of bounds");
        --y;
    }
    while (!detail::tri_exceeds(y + 1, lambda2)) {
        if (++steps > 2) throw std::logic_error("unrank2: correction out of bounds");
        ++y;
    }
    return Coord2{lambda2 - tri(y), y};
}

/// Full inverse map: rank -> (x, y, z) within a pyramid of side shape.n.
inline Coord3 unrank3(u64 lambda, const PyramidShape& shape) {
    if (lambda >= shape.element_count) throw std::out_of_range("unrank3: rank outside domain");
    const u64 z = unrank_layer(lambda);
    const Coord2 xy = unrank2(lambda - tetra(z));
    return Coord3{xy.x, xy.y, z};
}

// ---------------------------------------------------------------------------
// box decomposition (the baseline a bounding-box kernel launch performs)

struct BoxCoord {
    u64 x = 0;
    u64 y = 0;
    u64 z = 0;
    bool valid = false;  // lies inside the tetrahedral wedge x <= y <= z
    friend bool operator==(const BoxCoord&, const BoxCoord&) = default;
};

/// Row-major decomposition of a linear index over a side^3 box, plus the
/// wedge validity test a box-dispatched thread would run.
inline BoxCoord box_unrank(u64 linear, u64 side) {
    if (side == 0) throw std::invalid_argument("box_unrank: side must be positive");
    const u64 plane = checked_mul(side, side);
    const u64 z = linear / plane;
    if (z >= side) throw std::out_of_range("box_unrank: index outside box");
    const u64 rem = linear % plane;
    const u64 y = rem / side;
    const u64 x = rem % side;
    return BoxCoord{x, y, z, x <= y && y <= z};
}

}  // namespace tetrablock
