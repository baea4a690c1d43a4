#include "knads/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>

namespace knads::quad {

namespace {

template <std::size_t N>
Rule<N> make_rule() {
    using G = boost::math::quadrature::gauss<double, N>;
    const auto& xs = G::abscissa();
    const auto& ws = G::weights();
    Rule<N> r{};
    std::size_t k = 0;
    // Boost stores the non-negative half; mirror it.
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] == 0.0) {
            r.x[k] = 0.0;
            r.w[k++] = ws[i];
        } else {
            r.x[k] = xs[i];
            r.w[k++] = ws[i];
            r.x[k] = -xs[i];
            r.w[k++] = ws[i];
        }
    }
    return r;
}

}  // namespace

const Rule<20>& gl20() {
    static const Rule<20> r = make_rule<20>();
    return r;
}

const Rule<10>& gl10() {
    static const Rule<10> r = make_rule<10>();
    return r;
}

}  // namespace knads::quad
