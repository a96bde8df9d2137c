#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace skyshare {

// Raised when an integral cannot be resolved to the requested tolerance
// within the iteration budget. Never swallowed: callers either handle it
// or let it surface as a numeric failure.
class QuadratureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

// Gauss-Kronrod 15(7) nodes/weights on [-1,1].
inline constexpr std::array<double, 8> kGk15Nodes = {
    0.000000000000000000000000000000000e+00,
    2.077849550078984676006894037732449e-01,
    4.058451513773971669066064120769615e-01,
    5.860872354676911302941448382587296e-01,
    7.415311855993944398638647732807884e-01,
    8.648644233597690727897127886409262e-01,
    9.491079123427585245261896840478513e-01,
    9.914553711208126392068546975263285e-01};

inline constexpr std::array<double, 8> kGk15WeightsK = {
    2.094821410847278280129991748917143e-01,
    2.044329400752988924141619992346491e-01,
    1.903505780647854099132564024210137e-01,
    1.690047266392679028265834265985503e-01,
    1.406532597155259187451895905102379e-01,
    1.047900103222501838398763225415180e-01,
    6.309209262997855329070066318920429e-02,
    2.293532201052922496373200805896959e-02};

inline constexpr std::array<double, 4> kGk15WeightsG = {
    4.179591836734693877551020408163265e-01,
    3.818300505051189449503697754889751e-01,
    2.797053914892766679014677714237796e-01,
    1.294849661688696932706114326790820e-01};

template <typename F>
inline std::pair<double, double> gk15(const F& f, double a, double b) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);

    const double f0 = f(mid);
    double result_k = kGk15WeightsK[0] * f0;
    double result_g = kGk15WeightsG[0] * f0;
    for (std::size_t i = 1; i < 8; ++i) {
        const double dx = half * kGk15Nodes[i];
        const double fsum = f(mid - dx) + f(mid + dx);
        result_k += kGk15WeightsK[i] * fsum;
        if (i % 2 == 0) result_g += kGk15WeightsG[i / 2] * fsum;
    }
    result_k *= half;
    result_g *= half;
    return {result_k, std::abs(result_k - result_g)};
}

}  // namespace detail

// Adaptive bisection with a GK15 rule on a finite interval.
template <typename F>
inline double integrate_adaptive(const F& f, double a, double b,
                                 double rel_tol = 1e-10,
                                 double abs_tol = 0.0,
                                 int max_depth = 48) {
    struct Frame {
        double a, b;
        int depth;
    };
    // Explicit stack; depth cap keeps pathological kernels from recursing
    // forever before the error check can report them.
    double total = 0.0;
    double stack_err = 0.0;
    std::array<Frame, 2048> stack;
    std::size_t top = 0;
    stack[top++] = {a, b, 0};

    auto [whole, whole_err] = detail::gk15(f, a, b);
    (void)whole_err;
    const double scale = std::abs(whole);

    while (top > 0) {
        const Frame fr = stack[--top];
        auto [val, err] = detail::gk15(f, fr.a, fr.b);
        const double local_tol =
            std::max(abs_tol, rel_tol * std::max(scale, std::abs(total))) *
            (fr.b - fr.a) / (b - a);
        if (err <= local_tol || fr.depth >= max_depth) {
            if (fr.depth >= max_depth && err > 64.0 * local_tol)
                throw QuadratureError("integrate_adaptive: max depth reached at [" +
                                      std::to_string(fr.a) + ", " +
                                      std::to_string(fr.b) + "]");
            total += val;
            stack_err += err;
            continue;
        }
        if (top + 2 > stack.size())
            throw QuadratureError("integrate_adaptive: subdivision budget exhausted");
        const double m = 0.5 * (fr.a + fr.b);
        stack[top++] = {fr.a, m, fr.depth + 1};
        stack[top++] = {m, fr.b, fr.depth + 1};
    }
    return total;
}

// Integral of a nonnegative kernel over [0, inf). The kernel must decay
// like a power law r^(-1-eps); interference kernels satisfy this whenever
// the path-loss exponent exceeds 2. Strategy: adaptive quadrature on
// doubling segments [0,s], [s,2s], ... and a geometric-series tail bound
// fitted to the observed per-segment decay.
template <typename F>
inline double integrate_semi_infinite(const F& kernel, double rel_tol = 1e-8,
                                      double initial_segment = 1.0) {
    const double seg_rel_tol = rel_tol * 1e-2;
    double lo = 0.0;
    double hi = initial_segment;
    double total = integrate_adaptive(kernel, lo, hi, seg_rel_tol);
    double prev_seg = -1.0;

    for (int iter = 0; iter < 64; ++iter) {
        lo = hi;
        hi *= 2.0;
        const double seg = integrate_adaptive(kernel, lo, hi, seg_rel_tol,
                                              rel_tol * 1e-3 * std::abs(total));
        total += seg;
        if (seg == 0.0 && prev_seg == 0.0) return total;  // identically-zero tail
        if (prev_seg > 0.0 && seg >= 0.0) {
            // For kernel ~ c r^-p the segment ratio tends to 2^(1-p) < 1;
            // bound the remainder by the geometric series it dominates.
            const double ratio = seg / prev_seg;
            if (ratio < 0.75) {
                const double tail_bound = seg * ratio / (1.0 - ratio);
                if (tail_bound <= rel_tol * std::abs(total) && seg <= rel_tol * std::abs(total))
                    return total;
            }
        }
        prev_seg = seg;
    }
    throw QuadratureError(
        "integrate_semi_infinite: tail did not resolve within segment budget "
        "(kernel decaying too slowly?)");
}

}  // namespace skyshare
