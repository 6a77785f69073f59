#pragma once
// Exact big-integer counting of G(d), G_D(d) and G_D(d, ell): the ground
// truth every asymptotic formula is checked against.
//
// Method: memoized recursion on the sorted residual degree multiset.  One
// vertex of maximum residual degree is processed at a time; its edges are
// placed class-by-class (ascending degree value), memoizing the partial
// placement states as well, so equal sub-multisets are never recounted.
// Dense states (degree sum above half the possible total) are canonicalized
// through graph complementation before lookup.
//
// Memo keys pack the multiplicity-per-degree-value vector into 128 bits.
// A sequence needs bit_width(n) bits per field and one field per admissible
// degree value; instances too wide to key raise ResourceLimitError.  That
// ceiling is far beyond anything enumerable in practice (dense n <= 25,
// or sparse dmax <= 14 at n <= 511).
#include <cstdint>
#include <memory>
#include <string>

#include "loopcount/bigint.hpp"
#include "loopcount/degree_sequence.hpp"

namespace loopcount {

struct CacheOptions {
    // Hard cap on total memo entries; exceeding it aborts cleanly.
    std::size_t entry_cap = 50'000'000;
    // The transient partial-placement layer is dropped past this size and
    // rebuilt on demand; completed multiset values are never evicted.
    std::size_t partial_soft_cap = 6'000'000;
};

struct CacheCounters {
    std::size_t full_entries = 0;
    std::size_t partial_entries = 0;
    std::size_t partial_clears = 0;
    unsigned long long calls = 0;
};

class CountCache {
public:
    explicit CountCache(CacheOptions options = {});
    ~CountCache();
    CountCache(CountCache&&) noexcept;
    CountCache& operator=(CountCache&&) noexcept;
    CountCache(const CountCache&) = delete;
    CountCache& operator=(const CountCache&) = delete;

    // Snapshot file: one UTF-8 line per completed multiset,
    // "d1,d2,...,dk;decimal_count" with degrees nonincreasing, LF endings,
    // sorted lines.  load() merges (existing entries win), save() rewrites.
    void load_snapshot(const std::string& path);
    void save_snapshot(const std::string& path) const;

    CacheCounters counters() const;
    void clear();

    struct Impl;
    Impl& impl() { return *impl_; }

private:
    std::unique_ptr<Impl> impl_;
};

// Number of symmetric 0-1 matrices with zero diagonal and row sums seq
// (loopless graphs).  Zero for non-graphical input, 1 for the empty sequence.
BigCount count_simple(const DegreeSequence& seq, CountCache& cache);

// |G_D(seq)|: symmetric 0-1 matrices whose row sum, with diagonal entries
// weighted by the loop model, equals seq.  Sums count_simple over admissible
// diagonals, grouped by degree class with binomial multiplicities.
// threads > 1 splits the diagonal classes across worker shards.
BigCount count_loopy(const DegreeSequence& seq, LoopModel model, CountCache& cache,
                     int threads = 1);

// |G_D(seq, ell)|: members of G_D(seq) with exactly ell loops (trace ell).
BigCount count_loopy_by_trace(const DegreeSequence& seq, LoopModel model, int ell,
                              CountCache& cache, int threads = 1);

// Self-test of the loops-to-extra-vertex bijection:
// G_1(seq, ell) == G(seq with ell appended).  Always true.
bool check_loop_bijection(const DegreeSequence& seq, int ell, CountCache& cache);

// Single-shot conveniences with a private cache.
BigCount count_simple(const DegreeSequence& seq);
BigCount count_loopy(const DegreeSequence& seq, LoopModel model);
BigCount count_loopy_by_trace(const DegreeSequence& seq, LoopModel model, int ell);

}  // namespace loopcount
