#include "tetrablock/costmodel.hpp"

namespace tetrablock {

u64 aligned_rows(u64 n, u64 k) {
    if (k == 0) throw std::invalid_argument("aligned_rows: k must be >= 1");
    const u64 denom = k + k * ((k + 1) % 2);  // 2k for even k, k for odd k
    return n / denom;
}

u64 aligned_warps(u64 n, u64 k) {
    const u64 r = aligned_rows(n, k);
    const u64 w = checked_mul(r, r + 1);
    // The model's own bound W <= n^2/4k^2 + n/2k, checked exactly as
    // 4k^2 W <= n^2 + 2kn in 128-bit arithmetic. Only meaningful for even
    // k (the bound's derivation); the general-form row count for odd k is
    // larger, so restrict the check accordingly.
    if (k % 2 == 0) {
        using u128 = unsigned __int128;
        const u128 lhs = u128(4) * u128(k) * u128(k) * u128(w);
        const u128 rhs = u128(n) * u128(n) + u128(2) * u128(k) * u128(n);
        if (lhs > rhs) throw std::logic_error("aligned_warps: model bound violated");
    }
    return w;
}

double aligned_fraction(u64 n, u64 k) {
    const u64 w = aligned_warps(n, k);
    if (w == 0) return 0.0;
    const u64 layer_warps = ceil_div(tri(n), k);  // warp count the model divides by
    const double f = static_cast<double>(w) / static_cast<double>(layer_warps);
    if (k % 2 == 0) {
        const double bound = 1.0 / (2.0 * static_cast<double>(k)) + 1.0 / static_cast<double>(n);
        if (!(f < bound)) throw std::logic_error("aligned_fraction: model bound violated");
    }
    return f;
}

namespace {

double cost_term(double elements, u64 k, double alpha, double f) {
    // F + alpha (1 - F) rewritten as alpha - (alpha - 1) F so that alpha = 1
    // yields exactly elements / k with no rounding residue.
    return elements / static_cast<double>(k) * (alpha - (alpha - 1.0) * f);
}

}  // namespace

double cost_linear(u64 n, u64 k, double alpha) {
    if (n == 0) throw std::invalid_argument("cost_linear: n must be >= 1");
    if (!(alpha >= 1.0)) throw std::invalid_argument("cost_linear: alpha must be >= 1");
    const double f = aligned_fraction(n, k);
    return cost_term(static_cast<double>(tetra(n)), k, alpha, f);
}

double cost_linear_layered(u64 n, u64 k, double alpha) {
    if (n == 0) throw std::invalid_argument("cost_linear_layered: n must be >= 1");
    if (!(alpha >= 1.0)) throw std::invalid_argument("cost_linear_layered: alpha must be >= 1");
    double total = 0.0;
    for (u64 i = 1; i <= n; ++i) {
        total += cost_term(static_cast<double>(tri(i)), k, alpha, aligned_fraction(i, k));
    }
    return total;
}

BlockedCost cost_blocked(u64 n, u64 k, u64 rho) {
    if (n == 0) throw std::invalid_argument("cost_blocked: n must be >= 1");
    if (k == 0) throw std::invalid_argument("cost_blocked: k must be >= 1");
    if (rho == 0) throw std::invalid_argument("cost_blocked: rho must be >= 1");
    const double kk = static_cast<double>(k);
    const double tn = static_cast<double>(tetra(n));
    const double vol = static_cast<double>(rho) * static_cast<double>(rho) * static_cast<double>(rho);
    const double nn = static_cast<double>(n);
    BlockedCost c;
    c.model = (tn + nn * nn * vol) / kk;
    c.exact = static_cast<double>(tetra(ceil_div(n, rho))) * vol / kk;
    return c;
}

ReorgSpeedup reorg_speedup(u64 n, u64 k) {
    if (n == 0) throw std::invalid_argument("reorg_speedup: n must be >= 1");
    const double f = aligned_fraction(n, k);
    const double c_lin = cost_linear(n, k, 2.0);
    const double c_aligned = static_cast<double>(tetra(n)) / static_cast<double>(k);
    ReorgSpeedup s;
    s.ratio = c_lin / c_aligned;
    s.approx = 2.0 - f;
    s.fraction = f;
    if (s.ratio > 2.0 + 1e-12) throw std::logic_error("reorg_speedup: ratio exceeds 2");
    return s;
}

MapSpeedup map_speedup(u64 n, double beta, double tau) {
    if (n == 0) throw std::invalid_argument("map_speedup: n must be >= 1");
    if (!(beta > 0.0) || !(tau > 0.0))
        throw std::invalid_argument("map_speedup: per-block costs must be positive");
    const double nn = static_cast<double>(n);
    MapSpeedup s;
    s.limit = 6.0 * beta / tau;
    s.factor = 6.0 * beta * nn * nn * nn / (tau * (nn * nn * nn + 3.0 * nn * nn + 2.0 * nn));
    return s;
}

}  // namespace tetrablock
