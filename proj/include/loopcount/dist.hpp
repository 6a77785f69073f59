#pragma once
// Poisson binomial machinery and the trace-distribution results: exact PMFs,
// the parity-restricted expectation split, Chernoff tails, moment identities,
// and the binomial / Poisson binomial approximations to the law of the trace
// of a uniform random element of G_D(d).
#include <optional>
#include <utility>
#include <vector>

#include "loopcount/degree_sequence.hpp"
#include "loopcount/exact.hpp"

namespace loopcount {

// Probability vector p in [0,1]^n defining PB(p), the law of a sum of
// independent Bernoulli(p_j) variables.
using PoissonBinomialParams = std::vector<double>;

// Probability mass function over trace values 0..n, with an optional parity
// class outside which entries are exactly zero.
struct TraceLaw {
    std::vector<double> pmf;
    std::optional<int> support_parity;  // 0 or 1 when set

    int n() const { return static_cast<int>(pmf.size()) - 1; }
};

// Exact PMF by the convolution recurrence: fold one Bernoulli at a time into
// the coefficient row.  O(n^2); entries sum to 1 within 1e-12.
TraceLaw pb_pmf(const PoissonBinomialParams& p);

// Parity-restricted expectation  sum_{t == rho (mod 2)} f(t) Prob(X = t)
// for a polynomial f (coefficients low-to-high, degree <= 8), via the
// generating-function sign identity
//   (1/2) fhat(p) + (-1)^rho (1/2) Z fhat(r),   r_j = -p_j/(1-2p_j),
//   Z = prod (1-2p_j).
// fhat is evaluated through the moment identities as polynomial expressions
// in the parameter vector, which remain valid for the (possibly negative) r.
// Requires every p_j != 1/2.
double pb_parity_split(const PoissonBinomialParams& p, const std::vector<double>& poly,
                       int rho);

// Chernoff bounds: first component bounds Prob(X - mean <= -s), second
// bounds Prob(X - mean >= s), with phi(x) = (1+x) log(1+x) - x.
std::pair<double, double> chernoff_tails(const PoissonBinomialParams& p, double s);

// E(X^k) for k = 1..4 via the closed forms in the mean and the power sums.
double pb_moment(const PoissonBinomialParams& p, int k);

// Central moments: k = 2 gives sum p(1-p), k = 4 the fourth central moment.
double pb_central_moment(const PoissonBinomialParams& p, int k);

// Trace law of a uniform random element of G_D(seq), exact big-integer
// ratios rounded once.
TraceLaw trace_law_exact(const DegreeSequence& seq, LoopModel model, CountCache& cache);

// Dense approximation: Bin(n, lbar_D/n), parity-restricted and renormalized
// for D = 1.
TraceLaw trace_law_dense(const DegreeSequence& seq, LoopModel model);

// Sparse parameter vectors: p' (D = 1) and p'' = d_j(d_j-1)/S (D = 2).
// Entries of p' may leave [0,1] outside the sparse regime; violations below
// 1e-9 are clamped, larger ones raise RangeError.
struct SparseTraceParams {
    PoissonBinomialParams p_prime;
    PoissonBinomialParams p_dprime;
};
SparseTraceParams sparse_trace_params(const DegreeSequence& seq);

// Sparse approximation: PB(p') parity-restricted and renormalized for D = 1,
// PB(p'') for D = 2.
TraceLaw trace_law_sparse(const DegreeSequence& seq, LoopModel model);

// Leading-order mean and variance of the trace law.
struct TraceMoments {
    double mean = 0;
    double variance = 0;
};
TraceMoments dense_trace_moments(const DegreeSequence& seq, LoopModel model);
TraceMoments sparse_trace_moments(const DegreeSequence& seq, LoopModel model);

// Law utilities.
double law_mean(const TraceLaw& law);
double law_variance(const TraceLaw& law);           // E(Z^2) - E(Z)^2
double law_variance_pairwise(const TraceLaw& law);  // cancellation-free double sum
double total_variation(const TraceLaw& a, const TraceLaw& b);

}  // namespace loopcount
