#pragma once
// Log-space evaluators for the closed enumeration formulas: the sparse and
// dense counts of loopless graphs, their loopy counterparts under both loop
// models, the regular-case specializations, the reference-ensemble loop
// counts, and the regular-loopy conjecture with its naive independent-degree
// estimate.
//
// Every evaluator returns the natural log of its formula in extended
// precision, with exact-rational assembly of the correction exponents.
// Applicability ranges are not enforced numerically (they are asymptotic);
// each estimate carries the error-order tag of its source formula instead.
#include "loopcount/bigint.hpp"
#include "loopcount/degree_sequence.hpp"
#include "loopcount/quad.hpp"

namespace loopcount {

enum class ErrorOrder {
    sparse_dmax_cubed_over_s,  // uniform as S -> infinity, error O(dmax^3/S)
    dense_n_power,             // dense regime, error O(n^-b)
    regular_d_squared_over_n,  // regular sparse specialization, error O(d^2/n)
    conjectured_n_squared,     // conjectured, remainder O(n^-2)
    heuristic,                 // no stated error term
};

enum class FormulaId {
    sparse_simple,        // loopless, sparse factorial form
    dense_simple,         // loopless, dense entropy form
    dense_loopy_by_trace,
    dense_loopy_total,
    sparse_loopy,
    sparse_regular_loopy,
    conjecture_regular_loopy,
    naive_regular_loopy,
};

const char* to_string(ErrorOrder order);
const char* to_string(FormulaId id);

struct LogEstimate {
    qreal log_value = 0;
    ErrorOrder error_order = ErrorOrder::heuristic;
    FormulaId formula = FormulaId::sparse_simple;
};

// Which prefactor the sparse formulas use: the Stirling form
// sqrt(2) (S/e)^{S/2}, or the exact factorial form S!/((S/2)! 2^{S/2})
// available when S is even.
enum class SparsePrefactor { stirling, factorial };

// ln C(n, k); exact integer binomial for n <= 64, log-gamma beyond.
qreal log_binomial(long long n, long long k);

// Loopless count, sparse regime: factorial main term times the five-term
// correction exponential.  Zero-degree vertices are ignored.
LogEstimate sparse_G(const DegreeSequence& seq);

// Loopless count, dense regime: entropy main term with the spread correction.
LogEstimate dense_G(const DegreeSequence& seq);

// Loopy counts in the dense regime, by trace and in total.
LogEstimate dense_GD_by_trace(const DegreeSequence& seq, LoopModel model, int ell);
LogEstimate dense_GD_total(const DegreeSequence& seq, LoopModel model);

// Loopy counts in the sparse regime.
LogEstimate sparse_GD(const DegreeSequence& seq, LoopModel model,
                      SparsePrefactor prefactor = SparsePrefactor::stirling);

// Regular-case specialization of the sparse loopy formulas.
LogEstimate sparse_regular(long long n, long long d, LoopModel model,
                           SparsePrefactor prefactor = SparsePrefactor::stirling);

// Reference ensembles: symmetric 0-1 matrices with S ones (A) and loopy
// graphs with S/2 edges (B), counted by number of loops.
BigCount loop_count_A(long long n, long long S, long long ell);
BigCount loop_count_B(long long n, long long S, long long ell);

// Exact mean number of loops over the A ensemble (big-integer ratio).
qreal mean_loops_A(long long n, long long S);

// Conjectured regular loopy count (without its O(n^-2) remainder) and the
// naive independent-degree estimate it refines.
LogEstimate conjecture_G2(long long n, long long d);
LogEstimate naive_G2(long long n, long long d);

}  // namespace loopcount
