#pragma once

// Thin RAII wrapper over GSL's Nelder-Mead minimizer (nmsimplex2).

#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>
#include <vector>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>
#include <gsl/gsl_vector.h>

namespace tricorr {

struct SimplexOptions {
    int max_iterations = 200;
    double size_tolerance = 1e-10;
    double initial_step = 0.05;
};

struct SimplexResult {
    std::vector<double> x;
    double value = std::numeric_limits<double>::infinity();
    int iterations = 0;
};

namespace detail {

struct GslVectorDeleter {
    void operator()(gsl_vector* v) const { gsl_vector_free(v); }
};
struct GslMinimizerDeleter {
    void operator()(gsl_multimin_fminimizer* m) const { gsl_multimin_fminimizer_free(m); }
};

template <class F>
double gsl_trampoline(const gsl_vector* x, void* params) {
    auto& f = *static_cast<F*>(params);
    std::vector<double> arg(x->size);
    for (std::size_t i = 0; i < x->size; ++i) arg[i] = gsl_vector_get(x, i);
    const double v = f(arg);
    return std::isfinite(v) ? v : std::numeric_limits<double>::max();
}

inline void silence_gsl() {
    static const bool once = [] {
        gsl_set_error_handler_off();
        return true;
    }();
    (void)once;
}

}  // namespace detail

// Minimizes f: std::vector<double> -> double starting at `start`.
template <class F>
SimplexResult minimize_simplex(F f, const std::vector<double>& start, const SimplexOptions& opt = {}) {
    detail::silence_gsl();
    const std::size_t n = start.size();
    if (n == 0) throw std::invalid_argument("minimize_simplex: empty start point");

    std::unique_ptr<gsl_vector, detail::GslVectorDeleter> x(gsl_vector_alloc(n));
    std::unique_ptr<gsl_vector, detail::GslVectorDeleter> step(gsl_vector_alloc(n));
    for (std::size_t i = 0; i < n; ++i) {
        gsl_vector_set(x.get(), i, start[i]);
        gsl_vector_set(step.get(), i, opt.initial_step);
    }
    std::unique_ptr<gsl_multimin_fminimizer, detail::GslMinimizerDeleter> m(
        gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, n));

    gsl_multimin_function fn;
    fn.n = n;
    fn.f = &detail::gsl_trampoline<F>;
    fn.params = &f;
    gsl_multimin_fminimizer_set(m.get(), &fn, x.get(), step.get());

    SimplexResult out;
    int status = GSL_CONTINUE;
    while (status == GSL_CONTINUE && out.iterations < opt.max_iterations) {
        ++out.iterations;
        if (gsl_multimin_fminimizer_iterate(m.get()) != GSL_SUCCESS) break;
        status = gsl_multimin_test_size(gsl_multimin_fminimizer_size(m.get()), opt.size_tolerance);
    }
    out.value = gsl_multimin_fminimizer_minimum(m.get());
    const gsl_vector* best = gsl_multimin_fminimizer_x(m.get());
    out.x.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.x[i] = gsl_vector_get(best, i);
    return out;
}

}  // namespace tricorr
