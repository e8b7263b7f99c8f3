#include "cli.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "seneca/borda.hpp"
#include "seneca/entropy.hpp"
#include "seneca/residuals.hpp"
#include "seneca/subsample.hpp"

namespace seneca::cli {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

constexpr const char* tool_version = "0.1.0";

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        auto field = trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (field.size() >= 2 && field.front() == '"' && field.back() == '"') {
            field = field.substr(1, field.size() - 2);
        }
        out.push_back(field);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

std::string csv_field(std::string_view s) {
    if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write '" + path.string() + "'");
    out << content;
    if (!out) throw InputError("write failed for '" + path.string() + "'");
}

std::string fmt_opt(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

void require_finite(double v, const std::string& what) {
    if (!std::isfinite(v)) throw NumericError("non-finite " + what);
}

unsigned resolve_threads(std::optional<unsigned> flag) {
    if (flag) {
        if (*flag == 0) throw UsageError("--threads must be >= 1");
        return *flag;
    }
    if (const char* env = std::getenv("SENECA_LAB_THREADS"); env && *env) {
        unsigned v = 0;
        const auto* end = env + std::strlen(env);
        const auto [ptr, ec] = std::from_chars(env, end, v);
        if (ec != std::errc() || ptr != end || v == 0) {
            throw UsageError(std::string("SENECA_LAB_THREADS must be a positive integer, got '") + env + "'");
        }
        return v;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::string valid_estimator_tags() {
    std::string out;
    for (auto k : all_estimators()) {
        if (!out.empty()) out += ", ";
        out += to_string(k);
    }
    return out;
}

std::vector<EstimatorKind> parse_estimator_list(const std::vector<std::string>& tags) {
    std::vector<EstimatorKind> out;
    for (const auto& raw : tags) {
        for (auto tag : split_fields(raw)) {
            if (tag.empty()) continue;
            if (tag == "all") {
                out.insert(out.end(), all_estimators().begin(), all_estimators().end());
                continue;
            }
            const auto kind = parse_estimator(tag);
            if (!kind) {
                throw UsageError("unknown estimator '" + std::string(tag) + "' (valid: " +
                                 valid_estimator_tags() + ", all)");
            }
            out.push_back(*kind);
        }
    }
    if (out.empty()) throw UsageError("no estimators given");
    for (std::size_t i = 0; i < out.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (out[i] == out[j]) throw UsageError("estimator '" + std::string(to_string(out[i])) + "' listed twice");
        }
    }
    return out;
}

void check_support_tag(const std::string& tag) {
    if (!support_estimator_by_name(tag)) {
        throw UsageError("unknown support estimator '" + tag + "' (valid: chao1, chao1-bc)");
    }
}

// Families -------------------------------------------------------------------

FamilySpec family_from_label(const std::string& label) {
    // "uniform", "step", "zipf-0.5", "dirichlet-1", "beta-binomial-2-2"
    for (Family f : {Family::beta_binomial, Family::dirichlet, Family::zipf, Family::uniform, Family::step}) {
        const std::string tag(to_string(f));
        if (label == tag && (f == Family::uniform || f == Family::step)) return {f};
        if (label.rfind(tag + "-", 0) != 0 || f == Family::uniform || f == Family::step) continue;
        const std::string rest = label.substr(tag.size() + 1);
        auto parse_num = [&](std::string_view s) {
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            if (ec != std::errc() || ptr != s.data() + s.size()) {
                throw UsageError("bad family parameter in '" + label + "'");
            }
            return v;
        };
        if (f == Family::beta_binomial) {
            const auto dash = rest.find('-');
            if (dash == std::string::npos) throw UsageError("beta-binomial needs two parameters: '" + label + "'");
            return {f, parse_num(std::string_view(rest).substr(0, dash)),
                    parse_num(std::string_view(rest).substr(dash + 1))};
        }
        return {f, parse_num(rest)};
    }
    throw UsageError("unknown family '" + label + "'");
}

FamilySpec family_from_json(const ojson& j) {
    if (j.is_string()) return family_from_label(j.get<std::string>());
    if (!j.is_object()) throw UsageError("config: family entries must be strings or objects");
    FamilySpec spec;
    bool have_family = false;
    for (const auto& [key, value] : j.items()) {
        if (key == "family") {
            const auto f = parse_family(value.get<std::string>());
            if (!f || *f == Family::empirical) throw UsageError("config: unknown family '" + value.get<std::string>() + "'");
            spec.family = *f;
            have_family = true;
        } else if (key == "alpha") {
            spec.alpha = value.get<double>();
        } else if (key == "beta") {
            spec.beta = value.get<double>();
        } else {
            throw UsageError("config: unknown family key '" + key + "'");
        }
    }
    if (!have_family) throw UsageError("config: family entry without \"family\"");
    return spec;
}

void validate_family(const FamilySpec& f) {
    const bool needs_alpha = f.family == Family::zipf || f.family == Family::dirichlet ||
                             f.family == Family::beta_binomial;
    if (needs_alpha && !(f.alpha > 0.0)) throw UsageError("config: " + f.label() + " needs alpha > 0");
    if (f.family == Family::beta_binomial && !(f.beta > 0.0)) {
        throw UsageError("config: " + f.label() + " needs beta > 0");
    }
}

ojson family_to_json(const FamilySpec& f) {
    ojson j;
    j["family"] = std::string(to_string(f.family));
    if (f.family == Family::zipf || f.family == Family::dirichlet || f.family == Family::beta_binomial) {
        j["alpha"] = f.alpha;
    }
    if (f.family == Family::beta_binomial) j["beta"] = f.beta;
    return j;
}

ojson config_to_json(const GridConfig& cfg) {
    ojson j;
    j["families"] = ojson::array();
    for (const auto& f : cfg.families) j["families"].push_back(family_to_json(f));
    j["support_sizes"] = cfg.support_sizes;
    j["n"] = cfg.n;
    j["trials"] = cfg.trials;
    j["estimators"] = ojson::array();
    for (auto k : cfg.estimators) j["estimators"].push_back(std::string(to_string(k)));
    j["master_seed"] = cfg.master_seed;
    j["bootstrap_reps"] = cfg.bootstrap_reps;
    j["confidence"] = cfg.confidence;
    j["support_estimator"] = cfg.support_estimator;
    return j;
}

// Output manifest ------------------------------------------------------------

struct Manifest {
    std::string command;
    ojson config;
    std::uint64_t master_seed = 0;
    std::vector<fs::path> outputs;
    double seconds = 0.0;

    void write(const fs::path& dir) const {
        ojson j;
        j["tool"] = "seneca-lab";
        j["version"] = tool_version;
        j["command"] = command;
        j["master_seed"] = master_seed;
        j["config"] = config;
        j["timing"] = {{"command", command}, {"wall_seconds", seconds}};
        j["outputs"] = ojson::array();
        for (const auto& p : outputs) {
            j["outputs"].push_back({{"file", p.filename().string()},
                                    {"bytes", fs::file_size(p)},
                                    {"sha256", sha256_hex(p)}});
        }
        write_file(dir / "manifest.json", j.dump(2) + "\n");
    }
};

fs::path prepare_out_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw InputError("cannot create output directory '" + dir + "'");
    return fs::path(dir);
}

// estimate -------------------------------------------------------------------

struct EstimateArgs {
    std::string input;
    std::vector<std::string> estimators;
    std::string support = "chao1-bc";
    std::string base = "e";
    std::string out;
};

double parse_base(const std::string& base) {
    if (base == "e") return std::exp(1.0);
    double b = 0.0;
    const auto [ptr, ec] = std::from_chars(base.data(), base.data() + base.size(), b);
    if (ec != std::errc() || ptr != base.data() + base.size() || !(b > 0.0) || b == 1.0 || !std::isfinite(b)) {
        throw UsageError("--base must be 'e' or a positive number other than 1, got '" + base + "'");
    }
    return b;
}

std::string unit_name(const std::string& base) {
    if (base == "e") return "nats";
    if (base == "2") return "bits";
    if (base == "10") return "hartleys";
    return "log" + base;
}

int cmd_estimate(const EstimateArgs& a, std::ostream& out) {
    const auto kinds = parse_estimator_list(a.estimators);
    check_support_tag(a.support);
    const double base = parse_base(a.base);
    const double scale = a.base == "e" ? 1.0 : 1.0 / std::log(base);
    const auto table = read_counts(a.input);
    const EstimatorOptions opts{support_estimator_by_name(a.support)};

    std::string csv = "estimator,value,unit,coverage,m_star,upsilon,support,fallback\n";
    for (auto k : kinds) {
        EntropyEstimate e;
        try {
            e = estimate_entropy(k, table.counts, opts);
        } catch (const std::invalid_argument& ex) {
            throw InputError(std::string(to_string(k)) + ": " + ex.what());
        }
        require_finite(e.value, std::string(to_string(k)) + " estimate");
        csv += std::string(to_string(k)) + "," + format_double(e.value * scale) + "," + unit_name(a.base) + "," +
               fmt_opt(e.coverage) + ",";
        if (e.solve) {
            csv += format_double(e.solve->m_star) + "," + std::to_string(e.solve->upsilon_used) + ",";
        } else {
            csv += ",,";
        }
        csv += (e.support ? format_double(e.support->value) : std::string()) + ",";
        csv += e.solve ? (e.solve->fallback ? "true" : "false") : "";
        csv += "\n";
    }
    if (a.out.empty() || a.out == "-") {
        out << csv;
    } else {
        write_file(a.out, csv);
    }
    return exit_ok;
}

// simulate -------------------------------------------------------------------

struct SimulateArgs {
    std::string preset;
    std::string config;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
    std::optional<int> bootstrap_reps;
    std::optional<unsigned> threads;
    bool residuals = false;
    bool per_trial = false;
};

std::string summaries_csv(const GridResult& r, std::uint64_t seed) {
    std::string s =
        "family,params,support_size,n,estimator,regime,support_risky,trials,rmse,bias,variance,ci_low,ci_high,seed\n";
    for (const auto& x : r.summaries) {
        for (double v : {x.rmse, x.bias, x.variance, x.ci_low, x.ci_high}) require_finite(v, "summary statistic");
        s += x.family.label() + "," + csv_field(x.family.params()) + "," + std::to_string(x.support_size) + "," +
             std::to_string(x.n) + "," + std::string(to_string(x.estimator)) + "," +
             std::string(to_string(x.regime)) + "," + (x.support_risky ? "true" : "false") + "," +
             std::to_string(x.trials) + "," + format_double(x.rmse) + "," + format_double(x.bias) + "," +
             format_double(x.variance) + "," + format_double(x.ci_low) + "," + format_double(x.ci_high) + "," +
             std::to_string(seed) + "\n";
    }
    return s;
}

std::string regimes_csv(const GridResult& r, std::uint64_t seed) {
    std::string s = "family,params,n,estimator,regime,settings,risky_settings,mean_rmse,ci_low,ci_high,radius,seed\n";
    for (const auto& x : r.regimes) {
        require_finite(x.mean_rmse, "regime mean");
        s += x.family.label() + "," + csv_field(x.family.params()) + "," + std::to_string(x.n) + "," +
             std::string(to_string(x.estimator)) + "," + std::string(to_string(x.regime)) + "," +
             std::to_string(x.settings) + "," + std::to_string(x.risky_settings) + "," +
             format_double(x.mean_rmse) + "," + format_double(x.ci.low) + "," + format_double(x.ci.high) + "," +
             format_double(x.ci.radius()) + "," + std::to_string(seed) + "\n";
    }
    return s;
}

std::string errors_csv(const GridResult& r) {
    std::string s = "family,params,support_size,message\n";
    for (const auto& e : r.errors) {
        s += e.family.label() + "," + csv_field(e.family.params()) + "," + std::to_string(e.support_size) + "," +
             csv_field(e.message) + "\n";
    }
    return s;
}

std::string trials_csv(const GridResult& r, const GridConfig& cfg) {
    std::string s = "family,params,support_size,n,trial,estimator,truth,estimate\n";
    for (const auto& t : r.trials) {
        for (std::size_t e = 0; e < cfg.estimators.size(); ++e) {
            s += t.family.label() + "," + csv_field(t.family.params()) + "," + std::to_string(t.support_size) +
                 "," + std::to_string(cfg.n) + "," + std::to_string(t.trial) + "," +
                 std::string(to_string(cfg.estimators[e])) + "," + format_double(t.truth) + "," +
                 format_double(t.estimates[e]) + "\n";
        }
    }
    return s;
}

std::string residuals_csv(const std::vector<ResidualRecord>& rows, Count n) {
    std::string s =
        "family,params,support_size,n,trial,expected,oracle,known_support,estimated_support,"
        "known_fallback,estimated_fallback\n";
    for (const auto& r : rows) {
        s += r.family.label() + "," + csv_field(r.family.params()) + "," + std::to_string(r.support_size) + "," +
             std::to_string(n) + "," + std::to_string(r.trial) + "," + format_double(r.expected) + "," +
             format_double(r.oracle) + "," + format_double(r.known_support) + "," +
             format_double(r.estimated_support) + "," + (r.known_fallback ? "true" : "false") + "," +
             (r.estimated_fallback ? "true" : "false") + "\n";
    }
    return s;
}

int cmd_simulate(const SimulateArgs& a, std::ostream& err) {
    const auto start = std::chrono::steady_clock::now();
    if (a.preset.empty() == a.config.empty()) throw UsageError("simulate needs exactly one of --preset or --config");
    GridConfig cfg;
    if (!a.preset.empty()) {
        cfg = preset(a.preset);
    } else {
        std::string text;
        try {
            text = read_file(a.config);
        } catch (const InputError& e) {
            throw UsageError(e.what());
        }
        cfg = parse_grid_config(text);
    }
    if (a.seed) cfg.master_seed = *a.seed;
    if (a.trials) cfg.trials = *a.trials;
    if (a.bootstrap_reps) cfg.bootstrap_reps = *a.bootstrap_reps;
    cfg.threads = resolve_threads(a.threads);
    cfg.keep_trials = a.per_trial;
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const auto dir = prepare_out_dir(a.out);

    const auto result = run_grid(cfg);
    Manifest manifest{"simulate", config_to_json(cfg), cfg.master_seed, {}, 0.0};
    if (!a.preset.empty()) manifest.config["preset"] = a.preset;

    auto emit = [&](const std::string& name, const std::string& content) {
        write_file(dir / name, content);
        manifest.outputs.push_back(dir / name);
    };
    emit("summaries.csv", summaries_csv(result, cfg.master_seed));
    emit("regimes.csv", regimes_csv(result, cfg.master_seed));
    if (!result.errors.empty()) {
        emit("errors.csv", errors_csv(result));
        err << "warning: " << result.errors.size() << " setting(s) skipped, see errors.csv\n";
    }
    if (a.per_trial) emit("trials.csv", trials_csv(result, cfg));
    if (a.residuals) {
        ResidualConfig rc{cfg.families, cfg.support_sizes, cfg.n, cfg.trials, cfg.master_seed,
                          cfg.support_estimator, cfg.threads};
        emit("residuals.csv", residuals_csv(oracle_residual_scenario(rc), cfg.n));
    }
    manifest.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    manifest.write(dir);
    return exit_ok;
}

// biodiv ---------------------------------------------------------------------

struct BiodivArgs {
    std::vector<std::string> populations;
    std::vector<Count> sizes{10, 20, 30, 40, 50};
    int trials = 1000;
    std::vector<std::string> estimators{"all"};
    std::string support = "chao1-bc";
    std::uint64_t seed = 0;
    std::string out;
    int bootstrap_reps = 1000;
    double confidence = 0.95;
    std::optional<unsigned> threads;
};

int cmd_biodiv(const BiodivArgs& a) {
    const auto start = std::chrono::steady_clock::now();
    const auto kinds = parse_estimator_list(a.estimators);
    check_support_tag(a.support);
    if (a.trials < 1) throw UsageError("--trials must be >= 1");
    if (a.bootstrap_reps < 0) throw UsageError("--bootstrap-reps must be >= 0");
    if (!(a.confidence > 0.0 && a.confidence < 1.0)) throw UsageError("--confidence must be in (0, 1)");
    const bool needs_two = std::any_of(kinds.begin(), kinds.end(), [](EstimatorKind k) {
        return k == EstimatorKind::james_stein || k == EstimatorKind::chao_wang_jost;
    });
    for (auto n : a.sizes) {
        if (n < 1) throw UsageError("--sizes must be positive");
        if (n < 2 && needs_two) throw UsageError("james-stein and chao-wang-jost need sample sizes >= 2");
    }

    // Read everything before simulating so bad inputs fail fast.
    std::vector<std::pair<std::string, CountsTable>> pops;
    std::map<std::string, int> seen;
    for (const auto& file : a.populations) {
        std::string id = fs::path(file).stem().string();
        if (const int k = ++seen[id]; k > 1) id += "-" + std::to_string(k);
        pops.emplace_back(id, read_counts(file));
    }
    const auto dir = prepare_out_dir(a.out);

    SubsampleConfig sc{a.sizes, a.trials, kinds, a.seed, a.support, resolve_threads(a.threads)};
    std::string summaries =
        "population,population_size,population_support,true_entropy,n,estimator,trials,rmse,bias,variance,seed\n";
    std::string ballots_out = "population,sample_size,rank,estimator\n";
    std::vector<Ballot> ballots;
    for (const auto& [id, table] : pops) {
        const auto r = subsample_bench(table.counts, id, sc);
        for (const auto& s : r.summaries) {
            for (double v : {s.rmse, s.bias, s.variance}) require_finite(v, "summary statistic");
            summaries += csv_field(s.population) + "," + std::to_string(s.population_size) + "," +
                         std::to_string(s.population_support) + "," + format_double(s.true_entropy) + "," +
                         std::to_string(s.n) + "," + std::string(to_string(s.estimator)) + "," +
                         std::to_string(s.trials) + "," + format_double(s.rmse) + "," + format_double(s.bias) +
                         "," + format_double(s.variance) + "," + std::to_string(a.seed) + "\n";
        }
        for (const auto& b : r.ballots) {
            for (std::size_t rank = 0; rank < b.ranking.size(); ++rank) {
                for (const auto& name : b.ranking[rank]) {
                    ballots_out += csv_field(b.population) + "," + std::to_string(b.sample_size) + "," +
                                   std::to_string(rank + 1) + "," + name + "\n";
                }
            }
        }
        ballots.insert(ballots.end(), r.ballots.begin(), r.ballots.end());
    }

    std::vector<std::string> names;
    for (auto k : kinds) names.emplace_back(to_string(k));
    const auto totals = borda(ballots, names);
    std::map<std::string, PivotInterval> cis;
    if (a.bootstrap_reps > 0) {
        auto rng = make_stream({a.seed, "borda", 0, 0, "pivot:borda"});
        cis = borda_bootstrap(ballots, a.bootstrap_reps, a.confidence, rng);
    }
    ojson borda_json;
    borda_json["populations"] = pops.size();
    borda_json["ballots"] = ballots.size();
    borda_json["points_per_ballot"] = static_cast<double>(names.size() * (names.size() - 1)) / 2.0;
    borda_json["bootstrap_reps"] = a.bootstrap_reps;
    borda_json["confidence"] = a.confidence;
    borda_json["seed"] = a.seed;
    borda_json["scores"] = ojson::array();
    for (const auto& name : names) {
        ojson entry{{"estimator", name}, {"points", totals.at(name)}};
        if (auto it = cis.find(name); it != cis.end()) {
            entry["ci_low"] = it->second.low;
            entry["ci_high"] = it->second.high;
            entry["radius"] = it->second.radius();
        }
        borda_json["scores"].push_back(entry);
    }

    Manifest manifest;
    manifest.command = "biodiv";
    manifest.master_seed = a.seed;
    manifest.config = {{"populations", a.populations}, {"sizes", a.sizes},         {"trials", a.trials},
                       {"estimators", names},          {"support_estimator", a.support},
                       {"bootstrap_reps", a.bootstrap_reps}, {"confidence", a.confidence}};
    auto emit = [&](const std::string& name, const std::string& content) {
        write_file(dir / name, content);
        manifest.outputs.push_back(dir / name);
    };
    emit("summaries.csv", summaries);
    emit("ballots.csv", ballots_out);
    emit("borda.json", borda_json.dump(2) + "\n");
    manifest.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    manifest.write(dir);
    return exit_ok;
}

}  // namespace

// Public helpers ---------------------------------------------------------------

std::string format_double(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc()) throw NumericError("cannot format double");
    return std::string(buf, ptr);
}

CountsTable parse_counts(std::string_view text, const std::string& source) {
    std::vector<std::string> labels;
    std::vector<Count> counts;
    std::map<std::string, std::size_t> index;
    bool two_columns = false;
    bool first = true;
    std::size_t line_no = 0;

    auto fail = [&](std::size_t column, const std::string& msg) -> void {
        throw InputError(source + ":" + std::to_string(line_no) + ":" + std::to_string(column) + ": " + msg);
    };
    auto parse_count = [&](std::string_view field, std::size_t column) {
        Count v = 0;
        const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
        if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
            fail(column, "expected a positive integer count, got '" + std::string(field) + "'");
        }
        if (v < 1) fail(column, "count must be positive, got " + std::to_string(v));
        return v;
    };

    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        const auto raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        const auto line = trim(raw);
        if (line.empty()) continue;
        const auto fields = split_fields(line);
        if (first) {
            first = false;
            if (fields.size() == 2 && lower(fields[0]) == "label" && lower(fields[1]) == "count") {
                two_columns = true;
                continue;
            }
            if (fields.size() != 1) fail(1, "expected header 'label,count' or a single column of counts");
        }
        if (two_columns) {
            if (fields.size() != 2) fail(fields.size() < 2 ? 2 : 3, "expected 2 fields, got " + std::to_string(fields.size()));
            if (fields[0].empty()) fail(1, "empty label");
            const std::string label(fields[0]);
            const Count c = parse_count(fields[1], 2);
            if (index.count(label)) fail(1, "duplicate label '" + label + "'");
            index[label] = counts.size();
            labels.push_back(label);
            counts.push_back(c);
        } else {
            if (fields.size() != 1) fail(2, "expected a single count per line");
            counts.push_back(parse_count(fields[0], 1));
            labels.push_back(std::to_string(line_no));
        }
    }
    if (counts.empty()) throw InputError(source + ": empty population (no counts)");

    // Canonical order: descending count, ties in file order.
    std::vector<std::size_t> perm(counts.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::stable_sort(perm.begin(), perm.end(), [&](auto x, auto y) { return counts[x] > counts[y]; });
    CountsTable t{{}, SampleCounts(counts)};
    for (auto i : perm) t.labels.push_back(labels[i]);
    return t;
}

CountsTable read_counts(const fs::path& path) { return parse_counts(read_file(path), path.string()); }

GridConfig preset(const std::string& name) {
    GridConfig cfg;
    cfg.families = {{Family::uniform},       {Family::step},          {Family::zipf, 0.5},
                    {Family::zipf, 1.0},     {Family::zipf, 1.5},     {Family::dirichlet, 0.5},
                    {Family::dirichlet, 1.0}, {Family::beta_binomial, 2.0, 2.0}};
    cfg.estimators.assign(all_estimators().begin(), all_estimators().end());
    cfg.trials = 1000;
    if (name == "table1") {
        cfg.n = 10;
        cfg.support_sizes = {2, 4, 6, 8, 10, 20, 30, 40, 50};
    } else if (name == "table2") {
        cfg.n = 20;
        cfg.support_sizes = {4, 8, 12, 16, 20, 40, 60, 80, 100};
    } else {
        throw UsageError("unknown preset '" + name + "' (valid: table1, table2)");
    }
    return cfg;
}

GridConfig parse_grid_config(std::string_view json_text) {
    ojson j;
    try {
        j = ojson::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw UsageError(std::string("config: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw UsageError("config: top level must be an object");
    GridConfig cfg;
    try {
        for (const auto& [key, v] : j.items()) {
            if (key == "families") {
                for (const auto& f : v) cfg.families.push_back(family_from_json(f));
            } else if (key == "support_sizes") {
                cfg.support_sizes = v.get<std::vector<std::size_t>>();
            } else if (key == "n") {
                cfg.n = v.get<Count>();
            } else if (key == "trials") {
                cfg.trials = v.get<int>();
            } else if (key == "estimators") {
                cfg.estimators = parse_estimator_list(v.get<std::vector<std::string>>());
            } else if (key == "master_seed") {
                cfg.master_seed = v.get<std::uint64_t>();
            } else if (key == "bootstrap_reps") {
                cfg.bootstrap_reps = v.get<int>();
            } else if (key == "confidence") {
                cfg.confidence = v.get<double>();
            } else if (key == "support_estimator") {
                cfg.support_estimator = v.get<std::string>();
            } else {
                throw UsageError("config: unknown key '" + key + "'");
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("config: ") + e.what());
    }
    for (const auto& f : cfg.families) validate_family(f);
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return cfg;
}

std::string sha256_hex(const fs::path& path) {
    const auto data = read_file(path);
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw NumericError("sha256 failed");
    }
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0xf];
    }
    return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Small-sample entropy estimation and benchmarks", "seneca-lab"};
    app.require_subcommand(1);
    app.set_version_flag("--version", tool_version);

    EstimateArgs est;
    auto* estimate = app.add_subcommand("estimate", "Estimate entropy from a counts file");
    estimate->add_option("-i,--input", est.input, "Counts CSV (label,count) or single column")->required();
    estimate->add_option("-e,--estimator", est.estimators, "Estimator tag(s), repeatable or comma separated; 'all'")
        ->required();
    estimate->add_option("--support", est.support, "Support estimator for seneca: chao1 | chao1-bc");
    estimate->add_option("--base", est.base, "Logarithm base for reported values (e, 2, 10, ...)");
    estimate->add_option("-o,--out", est.out, "Output CSV (default stdout)");

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "Run the synthetic benchmark grid");
    simulate->add_option("--preset", sim.preset, "Built-in grid: table1 | table2");
    simulate->add_option("--config", sim.config, "Grid config JSON");
    simulate->add_option("-o,--out", sim.out, "Output directory")->required();
    simulate->add_option("--seed", sim.seed, "Master seed override");
    simulate->add_option("--trials", sim.trials, "Trials per setting override");
    simulate->add_option("--bootstrap-reps", sim.bootstrap_reps, "Bootstrap replicates override");
    simulate->add_option("--threads", sim.threads, "Worker threads (overrides SENECA_LAB_THREADS)");
    simulate->add_flag("--residuals", sim.residuals, "Also write missing-mass residuals");
    simulate->add_flag("--per-trial", sim.per_trial, "Also write per-trial estimates");

    BiodivArgs bio;
    auto* biodiv = app.add_subcommand("biodiv", "Subsample populations and rank estimators by Borda count");
    biodiv->add_option("-p,--population", bio.populations, "Population counts file(s)")->required();
    biodiv->add_option("--sizes", bio.sizes, "Sample sizes")->delimiter(',');
    biodiv->add_option("--trials", bio.trials, "Samples per (population, size)");
    biodiv->add_option("-e,--estimator", bio.estimators, "Estimator tag(s) or 'all'");
    biodiv->add_option("--support", bio.support, "Support estimator for seneca: chao1 | chao1-bc");
    biodiv->add_option("--seed", bio.seed, "Master seed");
    biodiv->add_option("-o,--out", bio.out, "Output directory")->required();
    biodiv->add_option("--bootstrap-reps", bio.bootstrap_reps, "Replicates for Borda intervals (0 disables)");
    biodiv->add_option("--confidence", bio.confidence, "Interval level");
    biodiv->add_option("--threads", bio.threads, "Worker threads (overrides SENECA_LAB_THREADS)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForVersion&) {
        out << tool_version << "\n";
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }

    try {
        if (*estimate) return cmd_estimate(est, out);
        if (*simulate) return cmd_simulate(sim, err);
        if (*biodiv) return cmd_biodiv(bio);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return exit_input;
    } catch (const NumericError& e) {
        err << "numeric failure: " << e.what() << "\n";
        return exit_numeric;
    } catch (const std::domain_error& e) {
        err << "numeric failure: " << e.what() << "\n";
        return exit_numeric;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}

}  // namespace seneca::cli
