// loopcount: exact and asymptotic enumeration of symmetric 0-1 matrices with
// prescribed row sums, with or without nonzero diagonal entries.
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "loopcount/asymptotics.hpp"
#include "loopcount/degree_sequence.hpp"
#include "loopcount/dist.hpp"
#include "loopcount/exact.hpp"
#include "loopcount/report.hpp"
#include "loopcount/saddle.hpp"

namespace {

using namespace loopcount;

constexpr int kExitError = 1;
constexpr int kExitAssertionFailed = 2;

struct CommonOptions {
    std::string seq_csv;
    std::vector<long long> regular;  // n d
    int model = 2;
    std::string format = "csv";
    std::string cache_path = "loopcount.cache";
    bool no_cache = false;
    int threads = 1;
    bool by_trace = false;
};

void add_instance_flags(CLI::App* cmd, CommonOptions& opt, bool need_instance) {
    auto* seq = cmd->add_option("--seq", opt.seq_csv,
                                "explicit degree sequence, comma separated (e.g. 3,2,2,1)");
    auto* reg = cmd->add_option("--regular", opt.regular, "regular family: n d")
                    ->expected(2);
    seq->excludes(reg);
    reg->excludes(seq);
    if (need_instance) {
        // exactly one input form
        cmd->callback([seq, reg] {
            if ((seq->count() > 0) + (reg->count() > 0) != 1)
                throw CLI::ValidationError("give exactly one of --seq or --regular");
        });
    }
    cmd->add_option("--model", opt.model, "loop model: 1 (row sums) or 2 (graph degrees)")
        ->check(CLI::IsMember({1, 2}))
        ->capture_default_str();
}

void add_output_flags(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--cache", opt.cache_path, "memo cache snapshot path")
        ->capture_default_str();
    cmd->add_flag("--no-cache", opt.no_cache, "disable the cache snapshot file");
    cmd->add_option("--threads", opt.threads, "worker threads for diagonal classes")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
}

std::vector<int> parse_seq_csv(const std::string& csv) {
    std::vector<int> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) out.push_back(std::stoi(tok));
    return out;
}

DegreeSequence resolve_instance(const CommonOptions& opt) {
    if (!opt.regular.empty())
        return DegreeSequence::regular(static_cast<int>(opt.regular[0]),
                                       static_cast<int>(opt.regular[1]));
    return DegreeSequence(parse_seq_csv(opt.seq_csv));
}

std::string instance_label(const CommonOptions& opt) {
    if (!opt.regular.empty())
        return "regular(" + std::to_string(opt.regular[0]) + "," +
               std::to_string(opt.regular[1]) + ")";
    return "seq(" + opt.seq_csv + ")";
}

struct CacheFile {
    CountCache cache;
    std::string path;
    bool enabled;

    explicit CacheFile(const CommonOptions& opt)
        : path(opt.cache_path), enabled(!opt.no_cache) {
        if (enabled && std::filesystem::exists(path)) cache.load_snapshot(path);
    }
    void persist() {
        if (enabled) cache.save_snapshot(path);
    }
};

void emit(const Table& table, const CommonOptions& opt) {
    if (opt.format == "json")
        write_json(table, std::cout);
    else
        write_csv(table, std::cout);
}

// ---------------------------------------------------------------------- exact

int run_exact(const CommonOptions& opt) {
    DegreeSequence seq = resolve_instance(opt);
    const LoopModel model = loop_model_from_int(opt.model);
    CacheFile cache(opt);
    Table table;
    if (opt.by_trace) {
        table.columns = {"ell", "count"};
        for (int ell = 0; ell <= seq.n(); ell++) {
            BigCount c = count_loopy_by_trace(seq, model, ell, cache.cache, opt.threads);
            if (!c.is_zero())
                table.add_row({Cell::make_integer(ell), Cell::make_count(c)});
        }
    } else {
        table.columns = {"instance", "model", "count"};
        BigCount c = count_loopy(seq, model, cache.cache, opt.threads);
        table.add_row({Cell::make_text(instance_label(opt)),
                       Cell::make_integer(opt.model), Cell::make_count(c)});
    }
    cache.persist();
    emit(table, opt);
    return 0;
}

// ----------------------------------------------------------------- asymptotic

void add_estimate_row(Table& table, const std::string& label, int ell,
                      const std::function<LogEstimate()>& eval) {
    std::vector<Cell> row;
    row.push_back(Cell::make_text(label));
    row.push_back(ell >= 0 ? Cell::make_integer(ell) : Cell::make_empty());
    try {
        const LogEstimate est = eval();
        row.push_back(Cell::make_real(est.log_value));
        row.push_back(Cell::make_text(to_string(est.error_order)));
        row.push_back(Cell::make_empty());
    } catch (const ParityError& e) {
        row.push_back(Cell::make_empty());
        row.push_back(Cell::make_empty());
        row.push_back(Cell::make_text(std::string("parity: inapplicable (") + e.what() + ")"));
    } catch (const DensityError& e) {
        row.push_back(Cell::make_empty());
        row.push_back(Cell::make_empty());
        row.push_back(Cell::make_text(std::string("density: inapplicable (") + e.what() + ")"));
    } catch (const Error& e) {
        row.push_back(Cell::make_empty());
        row.push_back(Cell::make_empty());
        row.push_back(Cell::make_text(std::string("inapplicable (") + e.what() + ")"));
    }
    table.add_row(std::move(row));
}

bool is_regular(const DegreeSequence& seq) {
    for (int d : seq.degrees())
        if (d != seq.degrees().front()) return false;
    return !seq.empty();
}

int run_asymptotic(const CommonOptions& opt) {
    DegreeSequence seq = resolve_instance(opt);
    const LoopModel model = loop_model_from_int(opt.model);
    Table table;
    table.columns = {"formula", "ell", "log_estimate", "error_order", "note"};
    if (seq.empty()) {
        emit(table, opt);
        return 0;
    }
    add_estimate_row(table, "sparse-simple", -1, [&] { return sparse_G(seq); });
    add_estimate_row(table, "dense-simple", -1, [&] { return dense_G(seq); });
    add_estimate_row(table, "sparse-loopy", -1, [&] { return sparse_GD(seq, model); });
    add_estimate_row(table, "dense-loopy-total", -1, [&] { return dense_GD_total(seq, model); });
    if (is_regular(seq)) {
        const long long n = seq.n();
        const long long d = seq.degrees().front();
        add_estimate_row(table, "sparse-regular-loopy", -1,
                         [&] { return sparse_regular(n, d, model); });
        if (model == LoopModel::twice) {
            add_estimate_row(table, "conjecture-regular-loopy", -1,
                             [&] { return conjecture_G2(n, d); });
            add_estimate_row(table, "naive-regular-loopy", -1, [&] { return naive_G2(n, d); });
        }
    }
    if (opt.by_trace) {
        for (int ell = 0; ell <= seq.n(); ell++) {
            const int e = ell;
            add_estimate_row(table, "dense-loopy-by-trace", ell,
                             [&, e] { return dense_GD_by_trace(seq, model, e); });
        }
    }
    emit(table, opt);
    return 0;
}

// -------------------------------------------------------------------- compare

int run_compare(const CommonOptions& opt) {
    DegreeSequence seq = resolve_instance(opt);
    const LoopModel model = loop_model_from_int(opt.model);
    CacheFile cache(opt);
    Table table;
    table.columns = {"instance",  "model",        "formula",   "exact",       "log_exact",
                     "log_estimate", "log_ratio", "error_order", "note"};
    const std::string label = instance_label(opt);

    auto add_comparison = [&](const std::string& formula, const BigCount& exact,
                              const std::function<LogEstimate()>& eval) {
        std::vector<Cell> row;
        row.push_back(Cell::make_text(label));
        row.push_back(Cell::make_integer(opt.model));
        row.push_back(Cell::make_text(formula));
        row.push_back(Cell::make_count(exact));
        const bool have_log = !exact.is_zero();
        row.push_back(have_log ? Cell::make_real(log_big(exact)) : Cell::make_empty());
        try {
            const LogEstimate est = eval();
            row.push_back(Cell::make_real(est.log_value));
            row.push_back(have_log ? Cell::make_real(log_big(exact) - est.log_value)
                                   : Cell::make_empty());
            row.push_back(Cell::make_text(to_string(est.error_order)));
            row.push_back(Cell::make_empty());
        } catch (const ParityError& e) {
            row.insert(row.end(), {Cell::make_empty(), Cell::make_empty(), Cell::make_empty()});
            row.push_back(Cell::make_text(std::string("parity: inapplicable (") + e.what() + ")"));
        } catch (const Error& e) {
            row.insert(row.end(), {Cell::make_empty(), Cell::make_empty(), Cell::make_empty()});
            row.push_back(Cell::make_text(std::string("inapplicable (") + e.what() + ")"));
        }
        table.add_row(std::move(row));
    };

    if (seq.empty()) {
        // the empty matrix: exact count 1, no estimates apply
        table.add_row({Cell::make_text(label), Cell::make_integer(opt.model),
                       Cell::make_text("exact-only"), Cell::make_count(BigCount(1)),
                       Cell::make_real(0), Cell::make_empty(), Cell::make_empty(),
                       Cell::make_empty(), Cell::make_text("estimates skipped: n = 0")});
        emit(table, opt);
        return 0;
    }

    const BigCount exact_loopy = count_loopy(seq, model, cache.cache, opt.threads);
    add_comparison("sparse-loopy", exact_loopy, [&] { return sparse_GD(seq, model); });
    add_comparison("dense-loopy-total", exact_loopy, [&] { return dense_GD_total(seq, model); });
    if (is_regular(seq)) {
        const long long n = seq.n();
        const long long d = seq.degrees().front();
        add_comparison("sparse-regular-loopy", exact_loopy,
                       [&] { return sparse_regular(n, d, model); });
        if (model == LoopModel::twice) {
            add_comparison("conjecture-regular-loopy", exact_loopy,
                           [&] { return conjecture_G2(n, d); });
            add_comparison("naive-regular-loopy", exact_loopy, [&] { return naive_G2(n, d); });
        }
    }
    const BigCount exact_simple = count_simple(seq, cache.cache);
    add_comparison("sparse-simple", exact_simple, [&] { return sparse_G(seq); });
    add_comparison("dense-simple", exact_simple, [&] { return dense_G(seq); });

    cache.persist();
    emit(table, opt);
    return 0;
}

// ----------------------------------------------------------------- trace-dist

int run_trace_dist(const CommonOptions& opt) {
    DegreeSequence seq = resolve_instance(opt);
    const LoopModel model = loop_model_from_int(opt.model);
    CacheFile cache(opt);

    const TraceLaw exact = trace_law_exact(seq, model, cache.cache);
    std::optional<TraceLaw> dense, sparse;
    std::string dense_note, sparse_note;
    try {
        dense = trace_law_dense(seq, model);
    } catch (const Error& e) {
        dense_note = e.what();
    }
    try {
        sparse = trace_law_sparse(seq, model);
    } catch (const Error& e) {
        sparse_note = e.what();
    }

    Table table;
    table.columns = {"kind", "key", "exact", "dense_binomial", "sparse_pb"};
    auto law_cell = [](const std::optional<TraceLaw>& law, size_t i) {
        return law && i < law->pmf.size() ? Cell::make_real(law->pmf[i]) : Cell::make_empty();
    };
    for (size_t i = 0; i < exact.pmf.size(); i++)
        table.add_row({Cell::make_text("pmf"), Cell::make_integer(static_cast<long long>(i)),
                       Cell::make_real(exact.pmf[i]), law_cell(dense, i), law_cell(sparse, i)});

    auto stat_cell = [&](const std::optional<TraceLaw>& law, double value) {
        return law ? Cell::make_real(value) : Cell::make_empty();
    };
    table.add_row({Cell::make_text("stat"), Cell::make_text("tv_vs_exact"), Cell::make_empty(),
                   stat_cell(dense, dense ? total_variation(exact, *dense) : 0),
                   stat_cell(sparse, sparse ? total_variation(exact, *sparse) : 0)});
    table.add_row({Cell::make_text("stat"), Cell::make_text("mean"),
                   Cell::make_real(law_mean(exact)),
                   stat_cell(dense, dense ? law_mean(*dense) : 0),
                   stat_cell(sparse, sparse ? law_mean(*sparse) : 0)});
    table.add_row({Cell::make_text("stat"), Cell::make_text("variance"),
                   Cell::make_real(law_variance(exact)),
                   stat_cell(dense, dense ? law_variance(*dense) : 0),
                   stat_cell(sparse, sparse ? law_variance(*sparse) : 0)});
    try {
        const TraceMoments dm = dense_trace_moments(seq, model);
        table.add_row({Cell::make_text("stat"), Cell::make_text("mean_leading"),
                       Cell::make_empty(), Cell::make_real(dm.mean), Cell::make_empty()});
        table.add_row({Cell::make_text("stat"), Cell::make_text("variance_leading"),
                       Cell::make_empty(), Cell::make_real(dm.variance), Cell::make_empty()});
    } catch (const Error&) {
    }
    try {
        const TraceMoments sm = sparse_trace_moments(seq, model);
        table.add_row({Cell::make_text("stat"), Cell::make_text("mean_expansion"),
                       Cell::make_empty(), Cell::make_empty(), Cell::make_real(sm.mean)});
        table.add_row({Cell::make_text("stat"), Cell::make_text("variance_expansion"),
                       Cell::make_empty(), Cell::make_empty(), Cell::make_real(sm.variance)});
    } catch (const Error&) {
    }
    if (!dense_note.empty())
        table.add_row({Cell::make_text("note"), Cell::make_text("dense"), Cell::make_empty(),
                       Cell::make_text(dense_note), Cell::make_empty()});
    if (!sparse_note.empty())
        table.add_row({Cell::make_text("note"), Cell::make_text("sparse"), Cell::make_empty(),
                       Cell::make_empty(), Cell::make_text(sparse_note)});

    cache.persist();
    emit(table, opt);
    return 0;
}

// ------------------------------------------------------------ conjecture-scan

int run_conjecture_scan(const CommonOptions& opt, int min_n, int max_n) {
    CacheFile cache(opt);
    Table table;
    table.columns = {"n", "d",        "exact",       "log_exact",
                     "log_conjecture", "residual",    "residual_n2", "in_interval"};
    bool all_hold = true;
    for (int n = min_n; n <= max_n; n++) {
        for (int d = 1; d <= n; d++) {
            if ((static_cast<long long>(n) * d) & 1) continue;  // nd must be even
            const BigCount exact =
                count_loopy(DegreeSequence::regular(n, d), LoopModel::twice, cache.cache,
                            opt.threads);
            const qreal log_exact = log_big(exact);
            const LogEstimate conj = conjecture_G2(n, d);
            const qreal residual = log_exact - conj.log_value;
            const qreal bound = static_cast<qreal>(2) / (static_cast<qreal>(n) * n);
            const bool inside = residual > -bound && residual < 0;
            if (n >= 4 && !inside) all_hold = false;
            table.add_row({Cell::make_integer(n), Cell::make_integer(d),
                           Cell::make_count(exact), Cell::make_real(log_exact),
                           Cell::make_real(conj.log_value), Cell::make_real(residual),
                           Cell::make_real(residual * n * n),
                           Cell::make_text(inside ? "true" : "false")});
        }
    }
    cache.persist();
    emit(table, opt);
    return all_hold ? 0 : kExitAssertionFailed;
}

// --------------------------------------------------------------- saddle-check

int run_saddle_check(const CommonOptions& opt, const std::string& beta_csv,
                     const std::vector<double>& alternating) {
    WeightVector w;
    if (!beta_csv.empty()) {
        std::stringstream ss(beta_csv);
        std::string tok;
        while (std::getline(ss, tok, ',')) w.beta.push_back(std::stod(tok));
    } else if (alternating.size() == 2) {
        const int n = static_cast<int>(alternating[0]);
        for (int j = 0; j < n; j++)
            w.beta.push_back(j % 2 ? -alternating[1] : alternating[1]);
    } else {
        throw Error("saddle-check needs --beta or --alternating");
    }
    Table table;
    table.columns = {"ell", "log_u_exact", "log_u_asymptotic", "log_ratio"};
    for (int ell = 0; ell <= w.n(); ell++) {
        const qreal le = u_exact_log(w, ell);
        const qreal la = u_asymptotic_log(w, ell);
        table.add_row({Cell::make_integer(ell), Cell::make_real(le), Cell::make_real(la),
                       Cell::make_real(le - la)});
    }
    emit(table, opt);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact and asymptotic counts of symmetric 0-1 matrices by row sums"};
    app.require_subcommand(1);

    CommonOptions opt;
    int scan_min_n = 4, scan_max_n = 16;
    std::string beta_csv;
    std::vector<double> alternating;

    auto* c_exact = app.add_subcommand("exact", "exact counts (total or by trace)");
    add_instance_flags(c_exact, opt, true);
    add_output_flags(c_exact, opt);
    c_exact->add_flag("--by-trace", opt.by_trace, "emit one row per trace value");

    auto* c_asym = app.add_subcommand("asymptotic", "formula estimates in log space");
    add_instance_flags(c_asym, opt, true);
    add_output_flags(c_asym, opt);
    c_asym->add_flag("--by-trace", opt.by_trace, "add per-trace dense estimates");

    auto* c_cmp = app.add_subcommand("compare", "exact counts vs every applicable formula");
    add_instance_flags(c_cmp, opt, true);
    add_output_flags(c_cmp, opt);

    auto* c_dist = app.add_subcommand("trace-dist",
                                      "exact trace law vs binomial / Poisson binomial");
    add_instance_flags(c_dist, opt, true);
    add_output_flags(c_dist, opt);

    auto* c_scan = app.add_subcommand("conjecture-scan",
                                      "regular loopy counts vs the conjectured formula");
    add_output_flags(c_scan, opt);
    c_scan->add_option("--min-n", scan_min_n, "smallest n")->capture_default_str();
    c_scan->add_option("--max-n", scan_max_n, "largest n")->capture_default_str();

    auto* c_saddle = app.add_subcommand("saddle-check",
                                        "elementary symmetric sums: exact vs asymptotic");
    add_output_flags(c_saddle, opt);
    c_saddle->add_option("--beta", beta_csv, "weight vector, comma separated");
    c_saddle->add_option("--alternating", alternating, "n amplitude: beta_j = +/-amplitude")
        ->expected(2);

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_exact->parsed()) return run_exact(opt);
        if (c_asym->parsed()) return run_asymptotic(opt);
        if (c_cmp->parsed()) return run_compare(opt);
        if (c_dist->parsed()) return run_trace_dist(opt);
        if (c_scan->parsed()) return run_conjecture_scan(opt, scan_min_n, scan_max_n);
        if (c_saddle->parsed()) return run_saddle_check(opt, beta_csv, alternating);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
