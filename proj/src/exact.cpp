#include "loopcount/exact.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>
#include <unordered_map>
#include <vector>

namespace loopcount {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

constexpr u64 kBinomOverflow = std::numeric_limits<u64>::max();
constexpr int kMaxValueBound = 130;  // vbound <= 128 always

struct MpzVal {
    mpz_t z;
    MpzVal() { mpz_init(z); }
    MpzVal(MpzVal&& o) noexcept {
        mpz_init(z);
        mpz_swap(z, o.z);
    }
    MpzVal& operator=(MpzVal&& o) noexcept {
        mpz_swap(z, o.z);
        return *this;
    }
    MpzVal(const MpzVal&) = delete;
    MpzVal& operator=(const MpzVal&) = delete;
    ~MpzVal() { mpz_clear(z); }
};

// Open-addressing map from packed multiset keys to mpz values.  Key zero is
// the all-empty multiset, which is short-circuited before any lookup, so it
// doubles as the empty-slot marker.  No per-entry heap nodes; entries are
// never erased individually, only cleared wholesale.
class MemoMap {
public:
    MemoMap() = default;
    MemoMap(const MemoMap&) = delete;
    MemoMap& operator=(const MemoMap&) = delete;
    MemoMap(MemoMap&& o) noexcept { swap(o); }
    MemoMap& operator=(MemoMap&& o) noexcept {
        swap(o);
        return *this;
    }
    ~MemoMap() { destroy(); }

    size_t size() const { return size_; }

    mpz_srcptr find(u128 key) const {
        if (!slots_) return nullptr;
        size_t i = index(key);
        while (slots_[i].key != 0) {
            if (slots_[i].key == key) return slots_[i].value;
            i = (i + 1) & mask_;
        }
        return nullptr;
    }

    // Inserts the key with a zero value and returns a pointer for the caller
    // to fill; returns the existing value unchanged if present.
    std::pair<mpz_ptr, bool> insert(u128 key) {
        if (size_ + 1 > (capacity() >> 2) * 3) grow();
        size_t i = index(key);
        while (slots_[i].key != 0) {
            if (slots_[i].key == key) return {slots_[i].value, false};
            i = (i + 1) & mask_;
        }
        slots_[i].key = key;
        mpz_init(slots_[i].value);
        size_++;
        return {slots_[i].value, true};
    }

    void clear() {
        if (!slots_) return;
        for (size_t i = 0; i <= mask_; i++)
            if (slots_[i].key != 0) {
                mpz_clear(slots_[i].value);
                slots_[i].key = 0;
            }
        size_ = 0;
    }

    template <typename Fn>
    void for_each(Fn&& fn) const {
        if (!slots_) return;
        for (size_t i = 0; i <= mask_; i++)
            if (slots_[i].key != 0) fn(slots_[i].key, static_cast<mpz_srcptr>(slots_[i].value));
    }

private:
    struct Slot {
        u128 key;
        mpz_t value;
    };

    Slot* slots_ = nullptr;
    size_t mask_ = 0;  // capacity - 1
    size_t size_ = 0;

    size_t capacity() const { return slots_ ? mask_ + 1 : 0; }

    size_t index(u128 key) const {
        u64 x = static_cast<u64>(key) ^ (static_cast<u64>(key >> 64) * 0x9e3779b97f4a7c15ull);
        x ^= x >> 30;
        x *= 0xbf58476d1ce4e5b9ull;
        x ^= x >> 27;
        x *= 0x94d049bb133111ebull;
        x ^= x >> 31;
        return static_cast<size_t>(x) & mask_;
    }

    void grow() {
        const size_t new_cap = slots_ ? capacity() * 2 : 64;
        Slot* old = slots_;
        const size_t old_cap = capacity();
        slots_ = static_cast<Slot*>(std::calloc(new_cap, sizeof(Slot)));
        if (!slots_) throw std::bad_alloc();
        mask_ = new_cap - 1;
        for (size_t i = 0; i < old_cap; i++) {
            if (old[i].key == 0) continue;
            size_t j = index(old[i].key);
            while (slots_[j].key != 0) j = (j + 1) & mask_;
            slots_[j].key = old[i].key;
            std::memcpy(&slots_[j].value, &old[i].value, sizeof(mpz_t));
        }
        std::free(old);
    }

    void destroy() {
        clear();
        std::free(slots_);
        slots_ = nullptr;
        mask_ = 0;
    }

    void swap(MemoMap& o) {
        std::swap(slots_, o.slots_);
        std::swap(mask_, o.mask_);
        std::swap(size_, o.size_);
    }
};

}  // namespace

// ---------------------------------------------------------------------------
// cache internals
// ---------------------------------------------------------------------------

struct CountCache::Impl {
    CacheOptions opt;

    // Key geometry: multiplicities of degree values 1..vbound, each in a
    // field of `bits` bits (so class sizes up to 2^bits - 1), packed into
    // 128 bits.  Set on first use, widened by rebuild() when a larger
    // vertex count arrives.
    int bits = 0;
    int vbound = 0;

    MemoMap full;                   // completed multisets
    std::vector<MemoMap> partial;   // (r, v)-indexed partial placements
    std::vector<u64> binom_tab;     // C(m, k), m < 2^bits, k <= vbound
    CacheCounters stats;
    std::size_t partial_count = 0;  // running total across the partial maps

    MemoMap& part(int r, int v) { return partial[static_cast<size_t>(r) * (vbound + 2) + v]; }

    u128 pack(const int* cnt) const {
        u128 key = 0;
        for (int v = 1; v <= vbound; v++)
            key |= static_cast<u128>(static_cast<u64>(cnt[v])) << (bits * (v - 1));
        return key;
    }

    void unpack(u128 key, int* cnt) const {
        const u128 mask = (static_cast<u128>(1) << bits) - 1;
        cnt[0] = 0;
        for (int v = 1; v <= vbound; v++)
            cnt[v] = static_cast<int>(static_cast<u64>((key >> (bits * (v - 1))) & mask));
    }

    u64 binom(int m, int k) const { return binom_tab[static_cast<size_t>(m) * (vbound + 1) + k]; }

    void set_geometry(int new_bits);
    void rebuild(int new_bits);
    void require_geometry(int max_class, int max_value);

    size_t partial_total() const {
        size_t s = 0;
        for (const auto& m : partial) s += m.size();
        return s;
    }

    // Housekeeping on every insert: enforce the entry cap, drop the partial
    // layer when it outgrows its soft cap.
    void housekeeping() {
        if (full.size() + partial_count > opt.entry_cap)
            throw ResourceLimitError("memo table exceeded entry cap (" +
                                     std::to_string(opt.entry_cap) + " entries)");
        if (partial_count > opt.partial_soft_cap) {
            for (auto& m : partial) m.clear();
            partial_count = 0;
            stats.partial_clears++;
        }
    }
};

void CountCache::Impl::set_geometry(int new_bits) {
    bits = new_bits;
    vbound = 128 / bits;
    partial.clear();
    partial.resize(static_cast<size_t>(vbound + 2) * (vbound + 2));
    const int rows = 1 << bits;
    const int cols = vbound + 1;
    binom_tab.assign(static_cast<size_t>(rows) * cols, 0);
    for (int m = 0; m < rows; m++) {
        binom_tab[static_cast<size_t>(m) * cols] = 1;
        for (int k = 1; k <= std::min(m, vbound); k++) {
            const u64 a = binom_tab[static_cast<size_t>(m - 1) * cols + k - 1];
            const u64 b = k <= m - 1 ? binom_tab[static_cast<size_t>(m - 1) * cols + k] : 0;
            const u64 s = a + b;
            binom_tab[static_cast<size_t>(m) * cols + k] =
                (a == kBinomOverflow || b == kBinomOverflow || s < a) ? kBinomOverflow : s;
        }
    }
}

void CountCache::Impl::rebuild(int new_bits) {
    std::vector<std::pair<std::vector<int>, BigCount>> saved;
    saved.reserve(full.size());
    int cnt[kMaxValueBound + 2];
    full.for_each([&](u128 key, mpz_srcptr value) {
        unpack(key, cnt);
        BigCount copy;
        mpz_set(copy.raw(), value);
        saved.emplace_back(std::vector<int>(cnt, cnt + vbound + 1), std::move(copy));
    });
    full.clear();
    set_geometry(new_bits);
    for (auto& [old_cnt, val] : saved) {
        int top = 0;
        for (size_t v = old_cnt.size(); v-- > 1;)
            if (old_cnt[v]) { top = static_cast<int>(v); break; }
        if (top > vbound)
            throw ResourceLimitError("cache rebuild: existing entries too wide for new key geometry");
        std::memset(cnt, 0, sizeof cnt);
        std::copy(old_cnt.begin(), old_cnt.end(), cnt);
        const auto [slot, fresh] = full.insert(pack(cnt));
        if (fresh) mpz_set(slot, val.raw());
    }
}

void CountCache::Impl::require_geometry(int max_class, int max_value) {
    const int need = std::bit_width(static_cast<unsigned>(std::max(1, max_class)));
    if (bits == 0)
        set_geometry(need);
    else if (need > bits)
        rebuild(need);
    if (max_value > vbound)
        throw ResourceLimitError("degree " + std::to_string(max_value) +
                                 " too large to key at this vertex count (limit " +
                                 std::to_string(vbound) + ")");
}

// ---------------------------------------------------------------------------
// the multiset recursion
// ---------------------------------------------------------------------------

namespace {

void ms_value(CountCache::Impl& C, int* cnt, mpz_ptr out);

// Place the pending vertex's remaining r edges into classes v..vbound.
// Chosen neighbours drop to value v-1, below the active window, so no vertex
// is picked twice for the same pending vertex.
void part_value(CountCache::Impl& C, int* cnt, int r, int v, mpz_ptr out) {
    C.stats.calls++;
    if (r == 0) {
        ms_value(C, cnt, out);
        return;
    }
    if (v > C.vbound) {
        mpz_set_ui(out, 0);
        return;
    }
    int cap = 0;
    for (int w = v; w <= C.vbound; w++) cap += cnt[w];
    if (cap < r) {
        mpz_set_ui(out, 0);
        return;
    }
    const u128 key = C.pack(cnt);
    MemoMap& memo = C.part(r, v);
    if (mpz_srcptr hit = memo.find(key)) {
        mpz_set(out, hit);
        return;
    }

    MpzVal acc, sub;
    const int m = cnt[v];
    const int kmax = std::min(m, r);
    for (int k = 0; k <= kmax; k++) {
        if (k > 0) {
            cnt[v]--;
            cnt[v - 1]++;
        }
        part_value(C, cnt, r - k, v + 1, sub.z);
        if (mpz_sgn(sub.z) != 0) {
            const u64 w = C.binom(m, k);
            if (w != kBinomOverflow) {
                mpz_addmul_ui(acc.z, sub.z, w);
            } else {
                MpzVal big;
                mpz_bin_uiui(big.z, m, k);
                mpz_addmul(acc.z, sub.z, big.z);
            }
        }
    }
    cnt[v] += kmax;
    cnt[v - 1] -= kmax;

    mpz_set(out, acc.z);
    const auto [slot, fresh] = memo.insert(key);
    if (fresh) {
        mpz_swap(slot, acc.z);
        C.partial_count++;
    }
    C.housekeeping();
}

// Count of simple graphs realizing the residual degree multiset in cnt.
void ms_value(CountCache::Impl& C, int* cnt, mpz_ptr out) {
    C.stats.calls++;
    int vmax = 0;
    long long sum = 0, verts = 0;
    for (int v = C.vbound; v >= 1; v--) {
        if (cnt[v]) {
            if (!vmax) vmax = v;
            sum += static_cast<long long>(v) * cnt[v];
            verts += cnt[v];
        }
    }
    if (vmax == 0) {
        mpz_set_ui(out, 1);
        return;
    }
    if ((sum & 1) || vmax > verts - 1) {
        mpz_set_ui(out, 0);
        return;
    }

    // Complement canonicalization: counts are invariant under complementing
    // the graph on the current vertex set, so dense states are looked up on
    // their sparse side.  Skipped when the mirrored values do not fit the key.
    int comp[kMaxValueBound + 2];
    int* canon = cnt;
    if (2 * sum >= verts * (verts - 1)) {
        const int cmax = static_cast<int>(verts) - 1;
        if (cmax - 1 <= C.vbound) {  // complement values are <= verts - 2
            std::memset(comp, 0, sizeof(int) * (C.vbound + 2));
            bool fits = true;
            for (int v = 1; v <= C.vbound && fits; v++) {
                if (!cnt[v]) continue;
                const int cv = cmax - v;
                if (cv > C.vbound)
                    fits = false;
                else if (cv >= 1)
                    comp[cv] += cnt[v];
            }
            if (fits &&
                (2 * sum > verts * (verts - 1) || C.pack(comp) < C.pack(cnt)))
                canon = comp;
        }
    }

    int cmax = 0;
    for (int v = C.vbound; v >= 1; v--)
        if (canon[v]) { cmax = v; break; }
    if (cmax == 0) {
        // the complement collapsed to the empty multiset (complete graph);
        // its key would be the empty-slot sentinel, so never store it
        mpz_set_ui(out, 1);
        return;
    }

    const u128 key = C.pack(canon);
    if (mpz_srcptr hit = C.full.find(key)) {
        mpz_set(out, hit);
        return;
    }

    canon[cmax]--;
    part_value(C, canon, cmax, 1, out);
    canon[cmax]++;

    const auto [slot, fresh] = C.full.insert(key);
    if (fresh) mpz_set(slot, out);
    C.housekeeping();
}

// Count for the positive part of a degree vector; zero straight away on
// parity or admissibility failure.
BigCount count_multiset(CountCache::Impl& C, const std::vector<int>& degrees) {
    long long sum = 0, verts = 0;
    int dmax = 0;
    for (int d : degrees) {
        if (d > 0) {
            sum += d;
            verts++;
            dmax = std::max(dmax, d);
        }
    }
    BigCount result;
    if (verts == 0) return BigCount(1);
    if ((sum & 1) || dmax > verts - 1) return BigCount(0);
    C.require_geometry(static_cast<int>(verts), dmax);
    std::vector<int> cnt(static_cast<size_t>(C.vbound) + 2, 0);
    for (int d : degrees)
        if (d > 0) cnt[d]++;
    ms_value(C, cnt.data(), result.raw());
    return result;
}

// One admissible diagonal pattern, grouped by degree class: which classes
// contribute how many loops, with the resulting residual degree vector.
struct DiagonalLeaf {
    BigCount multiplicity;        // product of per-class binomials
    std::vector<int> residual;    // degrees after removing D per loop
    int loops = 0;
};

// Enumerate diagonal patterns grouped by degree class.  want_trace < 0 keeps
// every pattern; otherwise only those with exactly want_trace loops.
std::vector<DiagonalLeaf> diagonal_leaves(const DegreeSequence& seq, LoopModel model,
                                          int want_trace) {
    const int D = loop_weight(model);
    std::unordered_map<int, int> mult;
    for (int d : seq.degrees()) mult[d]++;
    std::vector<std::pair<int, int>> classes(mult.begin(), mult.end());
    std::sort(classes.begin(), classes.end());

    double leaf_bound = 1;
    for (auto& [v, m] : classes) leaf_bound *= v >= D ? m + 1 : 1;
    if (leaf_bound > 5e7)
        throw ResourceLimitError("diagonal enumeration too large for this sequence");

    std::vector<DiagonalLeaf> leaves;
    std::vector<int> take(classes.size(), 0);
    const int n = seq.n();

    auto emit = [&](int loops) {
        DiagonalLeaf leaf;
        leaf.multiplicity = BigCount(1);
        leaf.loops = loops;
        leaf.residual.reserve(static_cast<size_t>(n));
        for (size_t i = 0; i < classes.size(); i++) {
            const auto [v, m] = classes[i];
            leaf.multiplicity *= BigCount::binomial(static_cast<unsigned long>(m),
                                                    static_cast<unsigned long>(take[i]));
            for (int j = 0; j < take[i]; j++) leaf.residual.push_back(v - D);
            for (int j = take[i]; j < m; j++) leaf.residual.push_back(v);
        }
        leaves.push_back(std::move(leaf));
    };

    // DFS over per-class loop counts
    auto rec = [&](auto&& self, size_t i, int loops) -> void {
        if (want_trace >= 0 && loops > want_trace) return;
        if (i == classes.size()) {
            if (want_trace < 0 || loops == want_trace) emit(loops);
            return;
        }
        const auto [v, m] = classes[i];
        const int cap = v >= D ? m : 0;
        for (int k = 0; k <= cap; k++) {
            take[i] = k;
            self(self, i + 1, loops + k);
        }
        take[i] = 0;
    };
    rec(rec, 0, 0);
    return leaves;
}

DegreeSequence loopy_complement(const DegreeSequence& seq, LoopModel model) {
    const int cap = seq.n() + loop_weight(model) - 1;
    std::vector<int> comp;
    comp.reserve(static_cast<size_t>(seq.n()));
    for (int d : seq.degrees()) comp.push_back(cap - d);
    return DegreeSequence(std::move(comp));
}

BigCount sum_leaves(CountCache& cache, const std::vector<DiagonalLeaf>& leaves, int threads);

}  // namespace

// ---------------------------------------------------------------------------
// public interface
// ---------------------------------------------------------------------------

CountCache::CountCache(CacheOptions options) : impl_(std::make_unique<Impl>()) {
    impl_->opt = options;
}
CountCache::~CountCache() = default;
CountCache::CountCache(CountCache&&) noexcept = default;
CountCache& CountCache::operator=(CountCache&&) noexcept = default;

CacheCounters CountCache::counters() const {
    CacheCounters c = impl_->stats;
    c.full_entries = impl_->full.size();
    c.partial_entries = impl_->partial_total();
    return c;
}

void CountCache::clear() {
    CacheOptions opt = impl_->opt;
    impl_ = std::make_unique<Impl>();
    impl_->opt = opt;
}

void CountCache::save_snapshot(const std::string& path) const {
    std::vector<std::string> lines;
    lines.reserve(impl_->full.size());
    int cnt[kMaxValueBound + 2];
    impl_->full.for_each([&](u128 key, mpz_srcptr value) {
        impl_->unpack(key, cnt);
        std::string line;
        for (int v = impl_->vbound; v >= 1; v--)
            for (int j = 0; j < cnt[v]; j++) {
                if (!line.empty()) line += ',';
                line += std::to_string(v);
            }
        line += ';';
        char* s = mpz_get_str(nullptr, 10, value);
        line += s;
        void (*freefn)(void*, size_t);
        mp_get_memory_functions(nullptr, nullptr, &freefn);
        freefn(s, std::strlen(s) + 1);
        lines.push_back(std::move(line));
    });
    std::sort(lines.begin(), lines.end());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write cache snapshot: " + path);
    for (const auto& l : lines) out << l << '\n';
}

void CountCache::load_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read cache snapshot: " + path);
    std::vector<std::pair<std::vector<int>, BigCount>> entries;
    std::string line;
    size_t lineno = 0;
    int max_class = 0, max_value = 0;
    while (std::getline(in, line)) {
        lineno++;
        if (line.empty()) continue;
        const auto semi = line.find(';');
        if (semi == std::string::npos)
            throw Error("cache snapshot " + path + ": bad line " + std::to_string(lineno));
        std::vector<int> degrees;
        std::stringstream ss(line.substr(0, semi));
        std::string tok;
        while (std::getline(ss, tok, ','))
            degrees.push_back(std::stoi(tok));
        BigCount value(line.substr(semi + 1));
        for (int d : degrees) {
            if (d <= 0)
                throw Error("cache snapshot " + path + ": nonpositive degree at line " +
                            std::to_string(lineno));
            max_value = std::max(max_value, d);
        }
        max_class = std::max(max_class, static_cast<int>(degrees.size()));
        entries.emplace_back(std::move(degrees), std::move(value));
    }
    if (entries.empty()) return;
    impl_->require_geometry(max_class, max_value);
    std::vector<int> cnt(static_cast<size_t>(impl_->vbound) + 2, 0);
    for (auto& [degrees, value] : entries) {
        std::fill(cnt.begin(), cnt.end(), 0);
        for (int d : degrees) cnt[d]++;
        const u128 key = impl_->pack(cnt.data());
        const auto [slot, fresh] = impl_->full.insert(key);
        if (fresh) mpz_set(slot, value.raw());
    }
}

BigCount count_simple(const DegreeSequence& seq, CountCache& cache) {
    return count_multiset(cache.impl(), seq.degrees());
}

BigCount count_loopy(const DegreeSequence& seq, LoopModel model, CountCache& cache,
                     int threads) {
    if (seq.empty()) return BigCount(1);
    if (!seq.admissible(model)) return BigCount(0);
    const long long S = seq.stats().S;
    const int D = loop_weight(model);
    const long long n = seq.n();
    if (D == 2 && (S & 1)) return BigCount(0);
    if (2 * S > n * (n + D - 1))
        return count_loopy(loopy_complement(seq, model), model, cache, threads);
    return sum_leaves(cache, diagonal_leaves(seq, model, -1), threads);
}

BigCount count_loopy_by_trace(const DegreeSequence& seq, LoopModel model, int ell,
                              CountCache& cache, int threads) {
    if (seq.empty()) return BigCount(ell == 0 ? 1 : 0);
    const long long n = seq.n();
    if (ell < 0 || ell > n) return BigCount(0);
    if (!seq.admissible(model)) return BigCount(0);
    const long long S = seq.stats().S;
    const int D = loop_weight(model);
    if (D == 1 && ((S - ell) & 1)) return BigCount(0);
    if (D == 2 && (S & 1)) return BigCount(0);
    if (2 * S > n * (n + D - 1))
        return count_loopy_by_trace(loopy_complement(seq, model), model,
                                    static_cast<int>(n) - ell, cache, threads);
    return sum_leaves(cache, diagonal_leaves(seq, model, ell), threads);
}

bool check_loop_bijection(const DegreeSequence& seq, int ell, CountCache& cache) {
    const BigCount by_trace = count_loopy_by_trace(seq, LoopModel::once, ell, cache);
    const BigCount appended = count_simple(seq.with_appended(ell), cache);
    return by_trace == appended;
}

BigCount count_simple(const DegreeSequence& seq) {
    CountCache cache;
    return count_simple(seq, cache);
}
BigCount count_loopy(const DegreeSequence& seq, LoopModel model) {
    CountCache cache;
    return count_loopy(seq, model, cache);
}
BigCount count_loopy_by_trace(const DegreeSequence& seq, LoopModel model, int ell) {
    CountCache cache;
    return count_loopy_by_trace(seq, model, ell, cache);
}

// ---------------------------------------------------------------------------
// leaf evaluation, optionally sharded across threads
// ---------------------------------------------------------------------------

namespace {

BigCount sum_leaves(CountCache& cache, const std::vector<DiagonalLeaf>& leaves, int threads) {
    std::vector<BigCount> results(leaves.size());
    const int T = std::min<int>(threads, static_cast<int>(leaves.size()));
    if (T <= 1) {
        for (size_t i = 0; i < leaves.size(); i++)
            results[i] = count_multiset(cache.impl(), leaves[i].residual);
    } else {
        // Worker shards get private memo tables; values are exact, so the
        // shard split cannot change any result, only the sharing.
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(static_cast<size_t>(T));
        std::vector<CountCache> shards;
        shards.reserve(static_cast<size_t>(T));
        for (int t = 0; t < T; t++) shards.emplace_back(cache.impl().opt);
        for (int t = 0; t < T; t++) {
            pool.emplace_back([&, t] {
                try {
                    for (size_t i = static_cast<size_t>(t); i < leaves.size(); i += T)
                        results[i] = count_multiset(shards[static_cast<size_t>(t)].impl(),
                                                    leaves[i].residual);
                } catch (...) {
                    errors[static_cast<size_t>(t)] = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }
    BigCount total;
    for (size_t i = 0; i < leaves.size(); i++)
        total.add_mul(results[i], leaves[i].multiplicity);
    return total;
}

}  // namespace

}  // namespace loopcount
