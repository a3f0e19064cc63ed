#include "kronmom/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "kronmom/errors.hpp"
#include "kronmom/generator.hpp"
#include "kronmom/graph_io.hpp"
#include "kronmom/moments.hpp"
#include "kronmom/parallel.hpp"
#include "kronmom/philox.hpp"
#include "kronmom/report.hpp"

namespace kronmom {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
    throw ParseError("config line " + std::to_string(line) + ": " + what, line);
}

template <class Int>
Int parse_int(std::string_view v, std::size_t line) {
    Int out{};
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size()) fail(line, "expected an integer, got '" + std::string(v) + "'");
    return out;
}

double parse_real(std::string_view v, std::size_t line) {
    std::string text(v);
    std::size_t used = 0;
    double out = 0.0;
    try {
        out = std::stod(text, &used);
    } catch (const std::exception&) {
        fail(line, "expected a number, got '" + text + "'");
    }
    if (used != text.size()) fail(line, "expected a number, got '" + text + "'");
    return out;
}

bool parse_bool(std::string_view v, std::size_t line) {
    if (v == "true" || v == "yes" || v == "1") return true;
    if (v == "false" || v == "no" || v == "0") return false;
    fail(line, "expected true or false, got '" + std::string(v) + "'");
}

std::vector<std::string_view> split_list(std::string_view v) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (pos <= v.size()) {
        std::size_t end = v.find_first_of(", ", pos);
        if (end == std::string_view::npos) end = v.size();
        auto item = trim(v.substr(pos, end - pos));
        if (!item.empty()) out.push_back(item);
        pos = end + 1;
    }
    return out;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct WorkItem {
    std::size_t source_index;
    bool synthetic;
    unsigned replication;
};

struct WorkResult {
    ObservedRow observed;
    std::vector<FitRow> fits;
    std::vector<FeatureRow> features;
};

double relative_difference(double truth, double other) {
    if (truth == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return (truth - other) / truth;
}

}  // namespace

double median(std::vector<double> values) {
    if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    return values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

ExperimentConfig parse_experiment_config(std::string_view text, const std::filesystem::path& base_dir) {
    ExperimentConfig cfg;
    enum class Section { global, synthetic, graph } section = Section::global;
    std::string objective_name = "dsq-f2";
    FeatureSet features = FeatureSet::all();
    std::vector<bool> params_seen;

    auto resolve = [&](std::string_view p) {
        std::filesystem::path path(p);
        return path.is_absolute() ? path : base_dir / path;
    };

    std::size_t line_no = 0;
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') fail(line_no, "unterminated section header");
            auto header = trim(line.substr(1, line.size() - 2));
            auto space = header.find_first_of(" \t");
            auto kind = header.substr(0, space);
            std::string name(space == std::string_view::npos ? std::string_view{} : trim(header.substr(space)));
            if (kind == "synthetic") {
                section = Section::synthetic;
                SyntheticSource s;
                s.name = name.empty() ? "synthetic-" + std::to_string(cfg.synthetic.size() + 1) : name;
                cfg.synthetic.push_back(s);
                params_seen.push_back(false);
            } else if (kind == "graph") {
                section = Section::graph;
                GraphSource g;
                g.name = name.empty() ? "graph-" + std::to_string(cfg.graphs.size() + 1) : name;
                cfg.graphs.push_back(g);
            } else {
                fail(line_no, "unknown section '" + std::string(kind) + "' (use synthetic or graph)");
            }
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string_view::npos) fail(line_no, "expected key = value");
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));

        if (section == Section::global) {
            if (key == "seed") {
                cfg.seed = parse_int<std::uint64_t>(value, line_no);
            } else if (key == "output_dir") {
                cfg.output_dir = resolve(value);
            } else if (key == "objective") {
                objective_name = std::string(value);
            } else if (key == "features") {
                try {
                    features = FeatureSet::parse(value);
                } catch (const std::invalid_argument& e) {
                    fail(line_no, e.what());
                }
            } else if (key == "methods") {
                cfg.methods.clear();
                for (auto item : split_list(value)) {
                    if (item == "all") {
                        cfg.methods = {FitMethod::direct, FitMethod::grid, FitMethod::leading, FitMethod::best};
                        continue;
                    }
                    auto m = parse_fit_method(item);
                    if (!m) fail(line_no, "unknown method '" + std::string(item) + "'");
                    cfg.methods.push_back(*m);
                }
                if (cfg.methods.empty()) fail(line_no, "methods list is empty");
            } else if (key == "starts") {
                cfg.fit.direct.starts = parse_int<unsigned>(value, line_no);
            } else if (key == "grid_points") {
                cfg.fit.grid.points_per_dim = parse_int<unsigned>(value, line_no);
            } else if (key == "regenerate") {
                cfg.regenerate = parse_bool(value, line_no);
            } else {
                fail(line_no, "unknown global key '" + std::string(key) + "'");
            }
        } else if (section == Section::synthetic) {
            auto& s = cfg.synthetic.back();
            if (key == "params") {
                auto items = split_list(value);
                if (items.size() != 3) fail(line_no, "params needs three numbers a, b, c");
                s.a = parse_real(items[0], line_no);
                s.b = parse_real(items[1], line_no);
                s.c = parse_real(items[2], line_no);
                params_seen.back() = true;
            } else if (key == "r") {
                s.r = parse_int<unsigned>(value, line_no);
            } else if (key == "replications") {
                s.replications = parse_int<unsigned>(value, line_no);
            } else {
                fail(line_no, "unknown synthetic key '" + std::string(key) + "'");
            }
        } else {
            auto& g = cfg.graphs.back();
            if (key == "path") {
                g.path = resolve(value);
                g.counts_json = false;
            } else if (key == "counts") {
                g.path = resolve(value);
                g.counts_json = true;
            } else if (key == "r") {
                g.r = parse_int<unsigned>(value, line_no);
            } else if (key == "directed") {
                g.directed = parse_bool(value, line_no);
            } else {
                fail(line_no, "unknown graph key '" + std::string(key) + "'");
            }
        }
    }

    for (std::size_t k = 0; k < cfg.synthetic.size(); ++k) {
        if (!params_seen[k]) fail(line_no, "synthetic source '" + cfg.synthetic[k].name + "' has no params");
    }
    for (const auto& g : cfg.graphs) {
        if (g.path.empty()) fail(line_no, "graph source '" + g.name + "' needs a path or counts key");
    }
    try {
        cfg.objective = ObjectiveSpec::parse(objective_name, features);
        cfg.objective.validate(true);
    } catch (const std::invalid_argument& e) {
        fail(line_no, e.what());
    }
    cfg.fit.direct.seed = cfg.seed;
    return cfg;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open experiment config '" + path.string() + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_experiment_config(text.str(), path.parent_path());
}

void validate(const ExperimentConfig& config) {
    for (const auto& s : config.synthetic) {
        if (s.replications == 0) throw std::invalid_argument("synthetic source '" + s.name + "': replications must be >= 1");
        KroneckerParams(s.a, s.b, s.c, s.r);
        if (s.r > kInMemoryMaxPower) {
            throw std::invalid_argument("synthetic source '" + s.name + "': r must be at most " +
                                        std::to_string(kInMemoryMaxPower));
        }
    }
    for (const auto& g : config.graphs) {
        if (!std::filesystem::exists(g.path)) {
            throw std::invalid_argument("graph source '" + g.name + "': file '" + g.path.string() + "' does not exist");
        }
    }
    if (config.synthetic.empty() && config.graphs.empty()) {
        throw std::invalid_argument("experiment config lists no sources");
    }
}

ExperimentOutputs run_experiment(const ExperimentConfig& config, unsigned workers) {
    validate(config);

    std::vector<WorkItem> items;
    for (std::size_t k = 0; k < config.synthetic.size(); ++k)
        for (unsigned rep = 0; rep < config.synthetic[k].replications; ++rep) items.push_back({k, true, rep});
    for (std::size_t k = 0; k < config.graphs.size(); ++k) items.push_back({k, false, 0});

    FitOptions fit_options = config.fit;
    fit_options.direct.workers = 1;
    fit_options.grid.workers = 1;

    std::vector<WorkResult> results(items.size());
    parallel_for(items.size(), workers, [&](std::size_t idx) {
        const WorkItem& item = items[idx];
        WorkResult& out = results[idx];
        const auto t0 = std::chrono::steady_clock::now();

        FeatureCounts counts;
        unsigned r = 0;
        std::optional<KroneckerParams> truth;
        std::uint64_t realization_seed = 0;
        std::string source_name;

        if (item.synthetic) {
            const auto& s = config.synthetic[item.source_index];
            source_name = s.name;
            truth.emplace(s.a, s.b, s.c, s.r);
            r = s.r;
            realization_seed = config.seed + item.replication;
            counts = count_features(generate({*truth, realization_seed}));
        } else {
            const auto& g = config.graphs[item.source_index];
            source_name = g.name;
            if (g.counts_json) {
                std::ifstream in(g.path);
                counts = counts_from_json(nlohmann::json::parse(in));
            } else {
                counts = count_features(load_edge_list(g.path, g.directed).graph);
            }
            r = g.r.value_or(counts.vertices == 0 ? 0u : choose_r(counts.vertices));
            realization_seed = config.seed;
        }
        out.observed = {source_name, item.replication, counts, seconds_since(t0)};

        std::optional<ExpectedFeatures> true_expected;
        if (truth) true_expected = expected_features(*truth);

        for (FitMethod method : config.methods) {
            FitRow row{source_name, item.replication, method, std::nullopt, {}};
            FitOptions opts = fit_options;
            opts.direct.seed = realization_seed;
            try {
                row.result = fit(method, counts, r, config.objective, opts);
            } catch (const std::exception& e) {
                row.error = e.what();
            }

            if (row.result) {
                std::optional<FeatureCounts> regenerated;
                if (item.synthetic && config.regenerate) {
                    regenerated = count_features(generate({row.result->params, mix_seed(realization_seed)}));
                }
                for (Feature f : kAllFeatures) {
                    FeatureRow fr;
                    fr.source = source_name;
                    fr.replication = item.replication;
                    fr.method = method;
                    fr.feature = f;
                    fr.observed = static_cast<double>(counts[f]);
                    fr.fitted_expected = row.result->expected[f];
                    if (regenerated) fr.regenerated = static_cast<double>((*regenerated)[f]);
                    if (true_expected) fr.true_expected = (*true_expected)[f];
                    out.features.push_back(fr);
                }
            }
            out.fits.push_back(std::move(row));
        }
    });

    // Rows are grouped by source, then method, then replication.
    ExperimentOutputs outputs;
    auto source_rank = [&](const WorkItem& w) {
        return w.synthetic ? w.source_index : config.synthetic.size() + w.source_index;
    };
    std::vector<std::size_t> order(items.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return std::pair(source_rank(items[x]), items[x].replication) <
               std::pair(source_rank(items[y]), items[y].replication);
    });

    for (std::size_t i : order) outputs.observed.push_back(results[i].observed);
    std::size_t start = 0;
    while (start < order.size()) {
        std::size_t end = start;
        while (end < order.size() && source_rank(items[order[end]]) == source_rank(items[order[start]])) ++end;
        for (std::size_t m = 0; m < config.methods.size(); ++m) {
            std::vector<double> as, bs, cs, objs;
            for (std::size_t k = start; k < end; ++k) {
                const auto& res = results[order[k]];
                const FitRow& row = res.fits[m];
                outputs.fits.push_back(row);
                for (const auto& fr : res.features) {
                    if (fr.method == row.method) outputs.features.push_back(fr);
                }
                if (row.result) {
                    as.push_back(row.result->params.a());
                    bs.push_back(row.result->params.b());
                    cs.push_back(row.result->params.c());
                    objs.push_back(row.result->objective_value);
                }
            }
            const WorkItem& first = items[order[start]];
            SummaryRow sum;
            sum.source = results[order[start]].observed.source;
            sum.method = config.methods[m];
            sum.fits = static_cast<unsigned>(as.size());
            sum.median_a = median(as);
            sum.median_b = median(bs);
            sum.median_c = median(cs);
            sum.median_objective = median(objs);
            if (first.synthetic) {
                const auto& s = config.synthetic[first.source_index];
                const KroneckerParams canonical(s.a, s.b, s.c, s.r);
                sum.truth = std::array<double, 3>{canonical.a(), canonical.b(), canonical.c()};
            }
            outputs.summary.push_back(sum);
        }
        start = end;
    }
    return outputs;
}

void write_experiment_csv(const ExperimentOutputs& outputs, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    auto open = [&](const char* name) {
        std::ofstream out(dir / name, std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write '" + (dir / name).string() + "'");
        return out;
    };
    auto opt = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string(); };

    {
        auto out = open("observed.csv");
        out << "source,replication,verts,edges,hairpins,tripins,triangles,seconds\n";
        for (const auto& o : outputs.observed) {
            out << o.source << ',' << o.replication << ',' << o.counts.vertices << ',' << o.counts.edges << ','
                << o.counts.hairpins << ',' << o.counts.tripins << ',' << o.counts.triangles << ','
                << format_number(o.seconds) << '\n';
        }
    }
    {
        auto out = open("fits.csv");
        out << "source,replication," << fit_csv_header() << ",error\n";
        for (const auto& f : outputs.fits) {
            out << f.source << ',' << f.replication << ',';
            if (f.result) {
                out << fit_csv_row(fit_method_name(f.method), *f.result) << ",\n";
            } else {
                std::string err = f.error;
                std::replace(err.begin(), err.end(), ',', ';');
                std::replace(err.begin(), err.end(), '"', '\'');
                out << fit_method_name(f.method) << ",,,,,,,,,,,\"" << err << "\"\n";
            }
        }
    }
    {
        auto out = open("differences.csv");
        out << "source,replication,method,feature,fit_relative_difference,regenerated_relative_difference\n";
        for (const auto& f : outputs.features) {
            std::optional<double> regen;
            if (f.regenerated) regen = relative_difference(f.observed, *f.regenerated);
            out << f.source << ',' << f.replication << ',' << fit_method_name(f.method) << ','
                << feature_name(f.feature) << ',' << format_number(relative_difference(f.observed, f.fitted_expected))
                << ',' << opt(regen) << '\n';
        }
    }
    {
        auto out = open("features.csv");
        out << "source,replication,method,feature,empirical,fitted_expected,regenerated,true_expected\n";
        for (const auto& f : outputs.features) {
            out << f.source << ',' << f.replication << ',' << fit_method_name(f.method) << ','
                << feature_name(f.feature) << ',' << format_number(f.observed) << ','
                << format_number(f.fitted_expected) << ',' << opt(f.regenerated) << ',' << opt(f.true_expected)
                << '\n';
        }
    }
    {
        auto out = open("summary.csv");
        out << "source,method,fits,median_a,median_b,median_c,median_objective,true_a,true_b,true_c\n";
        for (const auto& s : outputs.summary) {
            out << s.source << ',' << fit_method_name(s.method) << ',' << s.fits << ',' << format_number(s.median_a)
                << ',' << format_number(s.median_b) << ',' << format_number(s.median_c) << ','
                << format_number(s.median_objective);
            if (s.truth) {
                out << ',' << format_number((*s.truth)[0]) << ',' << format_number((*s.truth)[1]) << ','
                    << format_number((*s.truth)[2]);
            } else {
                out << ",,,";
            }
            out << '\n';
        }
    }
}

}  // namespace kronmom
