#pragma once
// Degree-sequence data model and the shared scalar functions (mu_D, lbar_D,
// Q_D) used by both the exact counter and the asymptotic evaluators.
//
// Conventions: a "loop" is a nonzero diagonal entry of a symmetric 0-1
// matrix.  Under loop model D it contributes D to its row sum, so a row has
// at most n + D - 1 admissible ones.
#include <vector>

#include "loopcount/bigint.hpp"
#include "loopcount/errors.hpp"
#include "loopcount/quad.hpp"

namespace loopcount {

// How a diagonal one counts toward its row sum: once (plain row sums) or
// twice (graph-theoretic degree of a loop).
enum class LoopModel : int { once = 1, twice = 2 };

inline int loop_weight(LoopModel m) { return static_cast<int>(m); }
inline LoopModel loop_model_from_int(int d) {
    if (d != 1 && d != 2) throw Error("loop model must be 1 or 2");
    return static_cast<LoopModel>(d);
}

// Derived statistics of a degree sequence.  S, S2, S3 are exact integers,
// d, lambda, R exact rationals; nothing here is rounded.
struct SequenceStats {
    long long S = 0;      // sum of degrees
    long long S2 = 0;     // sum of d_j (d_j - 1)
    long long S3 = 0;     // sum of d_j (d_j - 1) (d_j - 2)
    int dmax = 0;         // largest degree
    Rational d;           // average degree S / n
    Rational lambda;      // d / (n - 1), zero when n == 1
    Rational R;           // sum of squared deviations from the average
};

class DegreeSequence {
public:
    DegreeSequence() = default;
    explicit DegreeSequence(std::vector<int> degrees);
    static DegreeSequence regular(int n, int degree);

    int n() const { return static_cast<int>(degrees_.size()); }
    const std::vector<int>& degrees() const { return degrees_; }
    bool empty() const { return degrees_.empty(); }

    // Cached statistics; requires n >= 1.
    const SequenceStats& stats() const;

    // Admissibility for loop model D: every degree at most n + D - 1.
    bool admissible(LoopModel model) const;

    // New sequence with the given degree appended.
    DegreeSequence with_appended(int degree) const;

private:
    std::vector<int> degrees_;
    SequenceStats stats_;
    bool has_stats_ = false;
};

SequenceStats compute_stats(const std::vector<int>& degrees);

// Loop-model parameters mu_D = d / (n + D - 1) and the trace concentration
// point lbar_D.
struct LoopModelParams {
    LoopModel model = LoopModel::once;
    Rational mu;
    qreal lbar = 0;
};

LoopModelParams loop_params(const DegreeSequence& seq, LoopModel model);

// lbar_1 = sqrt(d) n / (sqrt(d) + sqrt(n-d)), extended to d in {0, n} by its
// continuous limit; lbar_2 = d n / (n + 1).
qreal lbar(const DegreeSequence& seq, LoopModel model);

// Second-order exponential correction Q_D(d, ell) of the dense formulas.
// Coefficients are assembled in exact rational arithmetic and the (possibly
// non-integral) ell is substituted in extended precision.  Requires
// 0 < d < n.
qreal q_dense(const DegreeSequence& seq, LoopModel model, qreal ell);

}  // namespace loopcount
