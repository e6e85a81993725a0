#include "zkdistill/cli.h"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "zkdistill/codes.h"
#include "zkdistill/distillation.h"
#include "zkdistill/protosim.h"
#include "zkdistill/resources.h"
#include "zkdistill/transversality.h"

namespace zkd::cli {

namespace {

using nlohmann::json;

std::string trim(std::string_view s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return "";
    }
    size_t e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

double parse_double(const std::string &key, const std::string &value) {
    double out = 0;
    auto result = std::from_chars(value.data(), value.data() + value.size(), out);
    if (result.ec != std::errc() || result.ptr != value.data() + value.size()) {
        throw std::invalid_argument("setting " + key + ": not a number: " + value);
    }
    return out;
}

size_t parse_size(const std::string &key, const std::string &value) {
    size_t out = 0;
    auto result = std::from_chars(value.data(), value.data() + value.size(), out);
    if (result.ec != std::errc() || result.ptr != value.data() + value.size()) {
        throw std::invalid_argument("setting " + key + ": not a non-negative integer: " + value);
    }
    return out;
}

std::string shortest(double v) {
    char buf[64];
    auto result = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, result.ptr);
}

json rational_json(const mpq_class &q) { return {{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}}; }

json poly_json(const IntPoly &p) {
    json coeffs = json::array();
    for (const auto &c : p.coefficients()) {
        coeffs.push_back(c.get_str());
    }
    return coeffs;
}

json rational_function_json(const RationalFunction &f) {
    return {{"numerator", poly_json(f.numerator())}, {"denominator", poly_json(f.denominator())}};
}

std::string series_text(const std::vector<mpq_class> &coeffs) {
    std::string out = "{";
    bool first = true;
    for (size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] != 0) {
            out += (first ? "" : ", ") + std::to_string(i) + ": " + coeffs[i].get_str();
            first = false;
        }
    }
    return out + "}";
}

json series_json(const std::vector<mpq_class> &coeffs) {
    json out = json::object();
    for (size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] != 0) {
            out[std::to_string(i)] = rational_json(coeffs[i]);
        }
    }
    return out;
}

size_t effective_parallel(const CliConfig &config) {
    if (config.parallel_degree != 0) {
        return config.parallel_degree;
    }
    return std::max<size_t>(1, std::thread::hardware_concurrency());
}

std::optional<std::string> system_env(const std::string &name) {
    const char *v = std::getenv(name.c_str());
    return v ? std::optional<std::string>(v) : std::nullopt;
}

DistillationStepModel risc_distiller(const std::string &name, const CliConfig &config, std::ostream &err) {
    if (name == "qrm15") {
        return cisc_step_model(2);
    }
    if (name == "mek") {
        if (config.mek_params_path) {
            return mek_model(load_mek_parameters(*config.mek_params_path));
        }
        err << "warning: no MEK parameter file; using the NON-AUTHORITATIVE placeholder\n";
        return mek_model(default_mek_parameters());
    }
    throw std::invalid_argument("unknown distiller: " + name + " (expected qrm15 or mek)");
}

json estimate_json(const ResourceEstimate &e) {
    json j = {{"architecture", to_string(e.architecture)},
              {"eps", e.eps},
              {"eps_target", e.eps_target},
              {"levels", e.levels},
              {"expected_states", e.expected_states},
              {"distiller", e.distiller_label},
              {"mode", e.mode},
              {"achieved_error", e.achieved_error},
              {"within_budget", e.within_budget},
              {"authoritative", e.authoritative}};
    if (e.architecture == Architecture::risc) {
        j["t_count"] = e.t_count;
    } else {
        j["k"] = e.k;
        j["correction_error"] = e.correction_error;
    }
    return j;
}

void print_estimate(std::ostream &out, OutputFormat format, const ResourceEstimate &e) {
    if (format == OutputFormat::json) {
        out << estimate_json(e).dump(2) << '\n';
        return;
    }
    if (format == OutputFormat::csv) {
        write_sweep_csv(out, {SweepRow{e.architecture, e.k, e.eps, e.eps_target, e.levels, e.expected_states,
                                       e.distiller_label, e.mode}});
        return;
    }
    out << to_string(e.architecture) << " via " << e.distiller_label << " (" << e.mode << ")\n";
    if (e.architecture == Architecture::risc) {
        out << "  T count:           " << e.t_count << '\n';
    } else {
        out << "  k:                 " << e.k << '\n';
    }
    out << "  levels:            " << e.levels << '\n';
    out << "  expected states:   " << shortest(e.expected_states) << '\n';
    out << "  achieved error:    " << shortest(e.achieved_error) << '\n';
    if (e.architecture == Architecture::cisc) {
        out << "  correction error:  " << shortest(e.correction_error) << '\n';
    }
    out << "  within budget:     " << (e.within_budget ? "yes" : "no") << '\n';
    if (!e.authoritative) {
        out << "  NOTE: distiller parameters are NON-AUTHORITATIVE\n";
    }
}

}  // namespace

std::map<std::string, std::string> parse_config_text(std::string_view text) {
    std::map<std::string, std::string> out;
    std::istringstream in{std::string(text)};
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty() || t.front() == '#') {
            continue;
        }
        size_t eq = t.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key=value");
        }
        out[trim(std::string_view(t).substr(0, eq))] = trim(std::string_view(t).substr(eq + 1));
    }
    return out;
}

OutputFormat parse_output_format(std::string_view text) {
    if (text == "json") {
        return OutputFormat::json;
    }
    if (text == "csv") {
        return OutputFormat::csv;
    }
    if (text == "text") {
        return OutputFormat::text;
    }
    throw std::invalid_argument("unknown output format: " + std::string(text));
}

void apply_settings(CliConfig &config, const std::map<std::string, std::string> &settings) {
    for (const auto &[key, value] : settings) {
        if (key == "format") {
            config.format = parse_output_format(value);
        } else if (key == "mek_params") {
            config.mek_params_path = value;
        } else if (key == "bisection_tol") {
            double tol = parse_double(key, value);
            if (!(tol > 0.0)) {
                throw std::invalid_argument("bisection_tol must be positive");
            }
            config.bisection_tol = tol;
        } else if (key == "exhaustive_limit") {
            size_t limit = parse_size(key, value);
            if (limit > kLongRunSiteLimit) {
                throw std::invalid_argument("exhaustive_limit must not exceed " + std::to_string(kLongRunSiteLimit));
            }
            config.exhaustive_limit = limit;
        } else if (key == "parallel") {
            config.parallel_degree = value == "auto" ? 0 : parse_size(key, value);
        } else {
            throw std::invalid_argument("unknown setting: " + key);
        }
    }
}

CliConfig resolve_config(const std::optional<std::string> &config_path, const EnvLookup &env) {
    CliConfig config;
    if (config_path) {
        std::ifstream in(*config_path);
        if (!in) {
            throw DomainError("cannot open config file: " + *config_path);
        }
        std::stringstream buffer;
        buffer << in.rdbuf();
        apply_settings(config, parse_config_text(buffer.str()));
    }
    static const std::pair<const char *, const char *> kEnvKeys[] = {
        {"ZKD_FORMAT", "format"},
        {"ZKD_MEK_PARAMS", "mek_params"},
        {"ZKD_BISECTION_TOL", "bisection_tol"},
        {"ZKD_EXHAUSTIVE_LIMIT", "exhaustive_limit"},
        {"ZKD_PARALLEL", "parallel"},
    };
    std::map<std::string, std::string> from_env;
    for (const auto &[var, key] : kEnvKeys) {
        if (auto v = env(var)) {
            from_env[key] = *v;
        }
    }
    apply_settings(config, from_env);
    return config;
}

int dispatch(const std::vector<std::string> &args, std::ostream &out, std::ostream &err, const EnvLookup &env_in) {
    EnvLookup env = env_in ? env_in : EnvLookup(system_env);

    CLI::App app{"Z_k magic-state distillation toolkit", "zkd"};
    app.require_subcommand(1);
    app.fallthrough();

    std::optional<std::string> config_flag, format_flag, mek_flag, parallel_flag;
    std::optional<double> tol_flag;
    std::optional<size_t> limit_flag;
    app.add_option("--config", config_flag, "key=value config file (default: $ZKD_CONFIG)");
    app.add_option("--format", format_flag, "Output format: json, csv or text");
    app.add_option("--mek-params", mek_flag, "JSON file with MEK distiller coefficients");
    app.add_option("--bisection-tol", tol_flag, "Threshold bisection tolerance");
    app.add_option("--exhaustive-limit", limit_flag, "Largest site count enumerated exhaustively");
    app.add_option("--parallel", parallel_flag, "Worker threads for enumeration, or 'auto'");

    // code
    size_t code_r = 1, code_m = 4;
    bool code_shortened = false, code_matrix = false;
    auto *code_cmd = app.add_subcommand("code", "Reed-Muller and quantum Reed-Muller code parameters");
    code_cmd->add_option("--r", code_r, "Order r")->required();
    code_cmd->add_option("--m", code_m, "Number of variables m")->required();
    code_cmd->add_flag("--shortened", code_shortened, "Use the shortened quantum code");
    code_cmd->add_flag("--matrix", code_matrix, "Also print the generator matrix");

    // certify
    size_t cert_r = 1, cert_m = 4, cert_k = 2;
    bool cert_unshortened = false;
    auto *cert_cmd = app.add_subcommand("certify", "Certify transversal Z_k on a QRM code");
    cert_cmd->add_option("--r", cert_r, "Order r")->default_val(1);
    cert_cmd->add_option("--m", cert_m, "Number of variables m")->required();
    cert_cmd->add_option("--k", cert_k, "Gate level k")->required();
    cert_cmd->add_flag("--unshortened", cert_unshortened, "Certify the unshortened code");

    // poly
    size_t poly_k = 2, poly_series = 0;
    bool poly_expand = false;
    std::vector<double> poly_eps;
    auto *poly_cmd = app.add_subcommand("poly", "Output-error and acceptance rational functions");
    poly_cmd->add_option("--k", poly_k, "Gate level k")->required();
    poly_cmd->add_option("--series", poly_series, "Taylor coefficients of eps_out up to this order");
    poly_cmd->add_option("--eps", poly_eps, "Evaluate at these error rates");
    poly_cmd->add_flag("--expand", poly_expand, "Print full polynomials in text mode");

    // threshold
    std::vector<size_t> thr_k{2};
    auto *thr_cmd = app.add_subcommand("threshold", "Distillation threshold eps_th(k)");
    thr_cmd->add_option("--k", thr_k, "Gate level(s) k");

    // verify
    size_t verify_k = 2;
    bool verify_long = false;
    auto *verify_cmd = app.add_subcommand("verify", "Cross-check closed forms against the circuit oracles");
    verify_cmd->add_option("--k", verify_k, "Gate level k");
    verify_cmd->add_flag("--long", verify_long, "Allow the long-running enumeration (up to 31 sites)");

    // estimate
    auto *est_cmd = app.add_subcommand("estimate", "Expected resource-state counts");
    est_cmd->require_subcommand(1);
    double est_eps = 1e-4, est_target = 1e-8;
    double c_qc = 0.5, c_t = 0.5, c_1 = 0.5, c_2 = 0.5;
    std::string est_distiller = "qrm15", est_rule = "composition", est_mode = "exact";
    size_t est_k = 3;
    auto *risc_cmd = est_cmd->add_subcommand("risc", "Compile to T gates, distill T states");
    risc_cmd->add_option("--eps", est_eps, "Bare error rate")->default_val(1e-4);
    risc_cmd->add_option("--target", est_target, "Target error eps'")->required();
    risc_cmd->add_option("--distiller", est_distiller, "qrm15 or mek");
    risc_cmd->add_option("--c-qc", c_qc, "Compiling share of the budget");
    risc_cmd->add_option("--c-t", c_t, "T-state share of the budget");
    auto *cisc_cmd = est_cmd->add_subcommand("cisc", "Distill Z_k states directly");
    cisc_cmd->add_option("--k", est_k, "Gate level k")->required();
    cisc_cmd->add_option("--eps", est_eps, "Bare error rate")->default_val(1e-4);
    cisc_cmd->add_option("--target", est_target, "Target error eps'")->required();
    cisc_cmd->add_option("--rule", est_rule, "Level rule: composition or paper_formula");
    cisc_cmd->add_option("--mode", est_mode, "Count mode: exact or paper");
    cisc_cmd->add_option("--c1", c_1, "Z_k share of the budget");
    cisc_cmd->add_option("--c2", c_2, "Correction share of the budget");

    // sweep
    std::vector<size_t> sweep_k{2, 3, 4, 5, 6};
    std::vector<std::string> sweep_distillers{"qrm15"};
    double sweep_eps = 1e-4, sweep_from = 4, sweep_to = 20;
    size_t sweep_per_decade = 4;
    std::string sweep_rule = "composition", sweep_mode = "exact";
    auto *sweep_cmd = app.add_subcommand("sweep", "Resource counts over a grid of targets");
    sweep_cmd->add_option("--k", sweep_k, "Gate levels");
    sweep_cmd->add_option("--eps", sweep_eps, "Bare error rate");
    sweep_cmd->add_option("--from", sweep_from, "First target exponent (10^-from)");
    sweep_cmd->add_option("--to", sweep_to, "Last target exponent (10^-to)");
    sweep_cmd->add_option("--per-decade", sweep_per_decade, "Grid points per decade");
    sweep_cmd->add_option("--distiller", sweep_distillers, "RISC distillers: qrm15 and/or mek");
    sweep_cmd->add_option("--rule", sweep_rule, "Level rule: composition or paper_formula");
    sweep_cmd->add_option("--mode", sweep_mode, "Count mode: exact or paper");
    sweep_cmd->add_option("--c-qc", c_qc, "Compiling share of the budget");
    sweep_cmd->add_option("--c-t", c_t, "T-state share of the budget");
    sweep_cmd->add_option("--c1", c_1, "Z_k share of the budget");
    sweep_cmd->add_option("--c2", c_2, "Correction share of the budget");

    // circuit
    std::string circ_kind = "distill", circ_as = "gates";
    size_t circ_k = 2;
    auto *circ_cmd = app.add_subcommand("circuit", "Export protocol circuits");
    circ_cmd->add_option("--kind", circ_kind, "distill, teleport or encoder");
    circ_cmd->add_option("--k", circ_k, "Gate level k");
    circ_cmd->add_option("--as", circ_as, "gates or qasm");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        if (!args.empty() && !args.front().starts_with('-') && app.get_subcommand_no_throw(args.front()) == nullptr) {
            err << "error: unknown subcommand '" << args.front() << "'\n\n" << app.help();
            return kExitUsage;
        }
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }

    try {
        std::optional<std::string> config_path = config_flag ? config_flag : env("ZKD_CONFIG");
        CliConfig config = resolve_config(config_path, env);
        std::map<std::string, std::string> flags;
        if (format_flag) flags["format"] = *format_flag;
        if (mek_flag) flags["mek_params"] = *mek_flag;
        if (tol_flag) flags["bisection_tol"] = shortest(*tol_flag);
        if (limit_flag) flags["exhaustive_limit"] = std::to_string(*limit_flag);
        if (parallel_flag) flags["parallel"] = *parallel_flag;
        apply_settings(config, flags);
        OutputFormat fmt = config.format;

        if (code_cmd->parsed()) {
            LinearCode rm = reed_muller(code_r, code_m);
            json doc = {{"rm", {{"r", code_r}, {"m", code_m}, {"n", rm.n()}, {"k", rm.k()}, {"d", rm.d()}}}};
            std::optional<LinearCode> dual;
            if (code_r + 1 <= code_m) {
                auto [rd, md] = dual_parameters(code_r, code_m);
                dual = reed_muller(rd, md);
                doc["dual"] = {{"r", rd}, {"m", md}, {"n", dual->n()}, {"k", dual->k()}, {"d", dual->d()}};
            } else {
                doc["dual"] = nullptr;
            }
            std::string quantum_text = "none";
            doc["qrm"] = nullptr;
            try {
                if (dual) {
                    CssCode q = qrm(code_r, code_m, code_shortened);
                    doc["qrm"] = {{"n", q.n()}, {"k_logical", q.k_logical()}, {"shortened", code_shortened}};
                    quantum_text = "[[" + std::to_string(q.n()) + "," + std::to_string(q.k_logical()) + "]]";
                }
            } catch (const DomainError &e) {
                doc["qrm_note"] = e.what();
                quantum_text = std::string("none (") + e.what() + ")";
            }
            if (code_matrix) {
                json rows = json::array();
                for (const auto &row : rm.generator().rows()) {
                    rows.push_back(row.to_string());
                }
                doc["generator"] = rows;
            }
            if (fmt == OutputFormat::json) {
                out << doc.dump(2) << '\n';
            } else if (fmt == OutputFormat::csv) {
                out << "r,m,n,k,d,dual_k,dual_d,qrm\n"
                    << code_r << ',' << code_m << ',' << rm.n() << ',' << rm.k() << ',' << rm.d() << ','
                    << (dual ? std::to_string(dual->k()) : "") << ',' << (dual ? std::to_string(dual->d()) : "")
                    << ',' << (doc["qrm"].is_null() ? "none" : quantum_text) << '\n';
            } else {
                out << "RM(" << code_r << "," << code_m << "): [" << rm.n() << "," << rm.k() << "," << rm.d()
                    << "]\n";
                if (dual) {
                    out << "dual RM(" << code_m - code_r - 1 << "," << code_m << "): [" << dual->n() << ","
                        << dual->k() << "," << dual->d() << "]\n";
                }
                out << "QRM(" << code_r << "," << code_m << ")" << (code_shortened ? " shortened" : "") << ": "
                    << quantum_text << '\n';
                if (code_matrix) {
                    out << rm.generator().to_text();
                }
            }
            return kExitOk;
        }

        if (cert_cmd->parsed()) {
            TransversalityCertificate c = certify_zk(qrm(cert_r, cert_m, !cert_unshortened), cert_k);
            json doc = {{"r", cert_r}, {"m", cert_m}, {"k", cert_k}, {"passed", c.passed}, {"a", c.a}};
            doc["x"] = c.x ? json(*c.x) : json(nullptr);
            doc["witness"] = nullptr;
            if (c.witness) {
                doc["witness"] = {{"j", c.witness->j},
                                  {"rows", c.witness->rows},
                                  {"weight", c.witness->weight},
                                  {"modulus", c.witness->modulus}};
            }
            if (fmt == OutputFormat::json) {
                out << doc.dump(2) << '\n';
            } else if (fmt == OutputFormat::csv) {
                out << "r,m,k,passed,a,x\n"
                    << cert_r << ',' << cert_m << ',' << cert_k << ',' << (c.passed ? "true" : "false") << ','
                    << c.a << ',' << (c.x ? std::to_string(*c.x) : "") << '\n';
            } else {
                out << "passed=" << (c.passed ? "true" : "false") << " a=" << c.a
                    << " x=" << (c.x ? std::to_string(*c.x) : "none") << '\n';
                if (c.witness) {
                    out << "witness: j=" << c.witness->j << " weight=" << c.witness->weight
                        << " not divisible by " << c.witness->modulus << '\n';
                }
            }
            return c.passed ? kExitOk : kExitDomainError;
        }

        if (poly_cmd->parsed()) {
            RationalFunction eout = cisc_output_error(poly_k);
            RationalFunction acc = cisc_acceptance(poly_k);
            std::vector<mpq_class> series =
                poly_series > 0 ? eout.series(poly_series) : std::vector<mpq_class>{};
            json evals = json::array();
            for (double e : poly_eps) {
                evals.push_back({{"eps", e},
                                 {"output_error", cisc_output_error_value(poly_k, e)},
                                 {"acceptance", cisc_acceptance_value(poly_k, e)},
                                 {"expected_repetitions", cisc_expected_repetitions_value(poly_k, e)}});
            }
            if (fmt == OutputFormat::json) {
                json doc = {{"k", poly_k},
                            {"output_error", rational_function_json(eout)},
                            {"acceptance", rational_function_json(acc)},
                            {"evaluations", evals}};
                if (poly_series > 0) {
                    doc["series"] = series_json(series);
                }
                out << doc.dump(2) << '\n';
            } else if (fmt == OutputFormat::csv) {
                out << "eps,output_error,acceptance,expected_repetitions\n";
                for (const auto &e : evals) {
                    out << shortest(e["eps"]) << ',' << shortest(e["output_error"]) << ','
                        << shortest(e["acceptance"]) << ',' << shortest(e["expected_repetitions"]) << '\n';
                }
            } else {
                if (poly_expand) {
                    out << "eps_out = (" << eout.numerator() << ") / (" << eout.denominator() << ")\n";
                    out << "acceptance = (" << acc.numerator() << ") / (" << acc.denominator() << ")\n";
                } else {
                    out << "eps_out: numerator degree " << eout.numerator().degree() << ", denominator degree "
                        << eout.denominator().degree() << " (use --expand to print)\n";
                }
                if (poly_series > 0) {
                    out << "series: " << series_text(series) << '\n';
                }
                for (const auto &e : evals) {
                    out << "eps=" << shortest(e["eps"]) << " eps_out=" << shortest(e["output_error"])
                        << " acceptance=" << shortest(e["acceptance"])
                        << " E[t]=" << shortest(e["expected_repetitions"]) << '\n';
                }
            }
            return kExitOk;
        }

        if (thr_cmd->parsed()) {
            json rows = json::array();
            std::vector<std::pair<size_t, double>> values;
            for (size_t k : thr_k) {
                double t = threshold(k, config.bisection_tol);
                values.emplace_back(k, t);
                rows.push_back({{"k", k}, {"threshold", t}, {"percent", 100.0 * t}});
            }
            if (fmt == OutputFormat::json) {
                out << json{{"thresholds", rows}}.dump(2) << '\n';
            } else if (fmt == OutputFormat::csv) {
                out << "k,threshold,percent\n";
                for (auto [k, t] : values) {
                    out << k << ',' << shortest(t) << ',' << shortest(100.0 * t) << '\n';
                }
            } else {
                std::ostringstream line;
                line << std::fixed << std::setprecision(4);
                for (auto [k, t] : values) {
                    if (values.size() > 1) {
                        line << "k=" << k << ' ';
                    }
                    line << t << '\n';
                }
                out << line.str();
            }
            return kExitOk;
        }

        if (verify_cmd->parsed()) {
            RationalFunction closed_err = cisc_output_error(verify_k);
            RationalFunction closed_acc = cisc_acceptance(verify_k);
            ProtocolPolynomials fast = macwilliams_fastpath(verify_k);
            bool fast_ok = fast.output_error == closed_err && fast.acceptance == closed_acc;
            json doc = {{"k", verify_k}, {"fastpath_matches_closed_form", fast_ok}};
            bool all_ok = fast_ok;
            size_t sites = (size_t{1} << (verify_k + 2)) - 1;
            bool run_enum = sites <= config.exhaustive_limit || (verify_long && sites <= kLongRunSiteLimit);
            if (run_enum) {
                EnumerationOptions opts;
                opts.exhaustive_limit = config.exhaustive_limit;
                opts.parallel_degree = effective_parallel(config);
                opts.allow_long_running = verify_long;
                ProtocolPolynomials en = enumerate_protocol(build_distillation_circuit(verify_k), opts);
                bool enum_ok = en.output_error == closed_err && en.acceptance == closed_acc;
                doc["enumeration_matches_closed_form"] = enum_ok;
                all_ok = all_ok && enum_ok;
            } else {
                doc["enumeration_matches_closed_form"] = nullptr;
                doc["enumeration_note"] = std::to_string(sites) + " sites exceed the exhaustive limit";
            }
            doc["agree"] = all_ok;
            if (fmt == OutputFormat::json) {
                out << doc.dump(2) << '\n';
            } else if (fmt == OutputFormat::csv) {
                out << "k,fastpath,enumeration,agree\n"
                    << verify_k << ',' << (fast_ok ? "match" : "MISMATCH") << ','
                    << (run_enum ? (doc["enumeration_matches_closed_form"].get<bool>() ? "match" : "MISMATCH")
                                 : "skipped")
                    << ',' << (all_ok ? "true" : "false") << '\n';
            } else {
                out << "k=" << verify_k << " fast path vs closed form: " << (fast_ok ? "match" : "MISMATCH") << '\n';
                if (run_enum) {
                    out << "k=" << verify_k << " exhaustive enumeration vs closed form: "
                        << (doc["enumeration_matches_closed_form"].get<bool>() ? "match" : "MISMATCH") << '\n';
                } else {
                    out << "k=" << verify_k << " exhaustive enumeration: skipped (" << sites
                        << " sites; pass --long to run)\n";
                }
            }
            return all_ok ? kExitOk : kExitDomainError;
        }

        if (est_cmd->parsed()) {
            ErrorBudget budget = ErrorBudget::make(c_qc, c_t, c_1, c_2);
            ResourceEstimate e;
            if (risc_cmd->parsed()) {
                e = risc_count(est_target, est_eps, budget, risc_distiller(est_distiller, config, err));
            } else {
                e = cisc_for_target(est_k, est_eps, est_target, budget, parse_level_rule(est_rule),
                                    parse_count_mode(est_mode));
            }
            print_estimate(out, fmt, e);
            return kExitOk;
        }

        if (sweep_cmd->parsed()) {
            SweepRequest req;
            req.k_values = sweep_k;
            req.eps = sweep_eps;
            req.targets = log_grid(sweep_from, sweep_to, sweep_per_decade);
            req.budget = ErrorBudget::make(c_qc, c_t, c_1, c_2);
            for (const auto &name : sweep_distillers) {
                req.risc_distillers.push_back(risc_distiller(name, config, err));
            }
            req.rule = parse_level_rule(sweep_rule);
            req.mode = parse_count_mode(sweep_mode);
            std::vector<SweepRow> rows = sweep(req);
            if (fmt == OutputFormat::json) {
                write_sweep_json(out, rows);
            } else {
                write_sweep_csv(out, rows);
            }
            return kExitOk;
        }

        if (circ_cmd->parsed()) {
            CliffordCircuit circuit;
            if (circ_kind == "distill") {
                circuit = build_distillation_circuit(circ_k).circuit;
            } else if (circ_kind == "teleport") {
                circuit = build_zk_teleport(circ_k).circuit;
            } else if (circ_kind == "encoder") {
                circuit = synthesize_encoder(qrm(1, circ_k + 2, true)).circuit;
            } else {
                throw std::invalid_argument("unknown circuit kind: " + circ_kind);
            }
            if (circ_as == "gates") {
                out << to_gate_list(circuit);
            } else if (circ_as == "qasm") {
                out << to_qasm(circuit);
            } else {
                throw std::invalid_argument("unknown circuit format: " + circ_as);
            }
            return kExitOk;
        }
    } catch (const DomainError &e) {
        err << "error: " << e.what() << '\n';
        return kExitDomainError;
    } catch (const std::invalid_argument &e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kExitDomainError;
    }
    err << app.help();
    return kExitUsage;
}

int dispatch(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) {
        args.emplace_back(argv[i]);
    }
    return dispatch(args, out, err);
}

}  // namespace zkd::cli
