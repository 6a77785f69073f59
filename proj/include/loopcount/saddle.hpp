#pragma once
// The elementary symmetric sum U_ell(beta) = sum over ell-subsets of the
// products of e^{beta_j}: exact evaluation by the coefficient-row recurrence,
// and its second-order asymptotic main term, cross-validated against each
// other.
#include <vector>

#include "loopcount/quad.hpp"

namespace loopcount {

struct WeightVector {
    std::vector<double> beta;

    int n() const { return static_cast<int>(beta.size()); }
    double bar() const;  // mean of the entries
};

// Exact e_ell(e^{beta_1}, ..., e^{beta_n}) by the coefficient-row fold;
// switches to a log-space fold above n = 300 to avoid overflow.
qreal u_exact(const WeightVector& w, int ell);
qreal u_exact_log(const WeightVector& w, int ell);

// Main term  C(n, ell) exp(ell bbar + ell(n-ell)/(2n^2) sum (beta_j - bbar)^2).
qreal u_asymptotic(const WeightVector& w, int ell);
qreal u_asymptotic_log(const WeightVector& w, int ell);

}  // namespace loopcount
