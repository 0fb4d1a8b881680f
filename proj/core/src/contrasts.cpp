#include "rankfd/contrasts.hpp"

#include <cmath>
#include <string>

#include "rankfd/errors.hpp"
#include "rankfd/linalg.hpp"

namespace rankfd {

num::Matrix centering_matrix(std::size_t a) {
    if (a < 1) throw domain_error("centering_matrix: need a >= 1");
    num::Matrix p(a, a, -1.0 / static_cast<double>(a));
    for (std::size_t i = 0; i < a; ++i) p(i, i) += 1.0;
    return p;
}

num::Matrix moore_penrose(const num::Matrix& m) {
    for (double v : m.data())
        if (!std::isfinite(v)) throw domain_error("moore_penrose: non-finite entry");
    const num::Svd dec = num::singular_value_decomposition(m);
    const double cut = num::singular_value_cutoff(m, dec.sigma);
    // pinv = V * diag(1/sigma) * U'
    num::Matrix out(m.cols(), m.rows());
    for (std::size_t k = 0; k < dec.sigma.size(); ++k) {
        if (dec.sigma[k] <= cut) continue;
        const double inv = 1.0 / dec.sigma[k];
        for (std::size_t i = 0; i < m.cols(); ++i) {
            const double vik = dec.v(i, k) * inv;
            if (vik == 0.0) continue;
            for (std::size_t j = 0; j < m.rows(); ++j) out(i, j) += vik * dec.u(j, k);
        }
    }
    return out;
}

HypothesisSpec projection_from_contrast(const num::Matrix& c, std::string label) {
    if (c.rows() == 0 || c.cols() == 0)
        throw invalid_contrast_error("projection_from_contrast: empty contrast");
    for (std::size_t i = 0; i < c.rows(); ++i) {
        double row_sum = 0.0;
        for (std::size_t j = 0; j < c.cols(); ++j) row_sum += c(i, j);
        if (std::abs(row_sum) > 1e-10 * std::max(1.0, c.max_abs()))
            throw invalid_contrast_error("projection_from_contrast: row " +
                                         std::to_string(i + 1) +
                                         " does not sum to zero");
    }
    const num::Matrix ct = c.transposed();
    HypothesisSpec spec;
    spec.t = ct * moore_penrose(c * ct) * c;
    // symmetrize exactly; T is a projection up to float noise
    for (std::size_t i = 0; i < spec.t.rows(); ++i)
        for (std::size_t j = i + 1; j < spec.t.cols(); ++j) {
            const double v = 0.5 * (spec.t(i, j) + spec.t(j, i));
            spec.t(i, j) = spec.t(j, i) = v;
        }
    spec.c = c;
    spec.label = std::move(label);
    return spec;
}

HypothesisSpec one_way_hypothesis(std::size_t d) {
    if (d < 2) throw domain_error("one_way_hypothesis: need d >= 2");
    HypothesisSpec spec;
    spec.c = centering_matrix(d);
    spec.t = spec.c;
    spec.label = "one-way";
    return spec;
}

TwoWayHypotheses two_way_hypotheses(std::size_t a, std::size_t b) {
    if (a < 2 || b < 2) throw domain_error("two_way_hypotheses: need a, b >= 2");
    const num::Matrix pa = centering_matrix(a);
    const num::Matrix pb = centering_matrix(b);
    const num::Matrix ja_scaled = num::Matrix::ones(a, a) * (1.0 / static_cast<double>(a));
    const num::Matrix jb_scaled = num::Matrix::ones(b, b) * (1.0 / static_cast<double>(b));

    TwoWayHypotheses h;
    h.main_a.t = num::kronecker(pa, jb_scaled);
    h.main_a.c = h.main_a.t;
    h.main_a.label = "main-A";
    h.main_b.t = num::kronecker(ja_scaled, pb);
    h.main_b.c = h.main_b.t;
    h.main_b.label = "main-B";
    h.interaction.t = num::kronecker(pa, pb);
    h.interaction.c = h.interaction.t;
    h.interaction.label = "interaction-AB";
    return h;
}

} // namespace rankfd
