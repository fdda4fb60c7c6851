#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "rgd/rgd.hpp"

using namespace rgd;
using nlohmann::json;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string tok; std::getline(ss, tok, sep);)
        if (!detail::trim(tok).empty()) out.push_back(detail::trim(tok));
    return out;
}

// "k=1", "s=2"
Params parse_params(const std::vector<std::string>& kvs) {
    Params p;
    for (auto& kv : kvs) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) throw InvalidInput("parameter " + kv + " is not key=value");
        p[detail::trim(kv.substr(0, eq))] = detail::parse_long(kv.substr(eq + 1));
    }
    return p;
}

// "1-2,2-3" or one "u v" / "u-v" pair per line
LabeledGraph parse_graph(const std::string& text) {
    std::vector<Edge> es;
    std::string flat = text;
    for (char& ch : flat)
        if (ch == '\n' || ch == ';') ch = ',';
    for (auto& tok : split(flat, ',')) {
        std::string t = tok;
        for (char& ch : t)
            if (ch == '-' || ch == '\t') ch = ' ';
        std::istringstream is(t);
        Label a, b;
        if (!(is >> a >> b)) throw InvalidInput("bad edge " + tok);
        es.emplace_back(a, b);
    }
    return LabeledGraph::from_edges(es);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json edges_json(const std::vector<Edge>& es) {
    json j = json::array();
    for (auto& e : es) j.push_back({e.u, e.v});
    return j;
}

json graph_json(const LabeledGraph& g) { return {{"vertices", g.vertices()}, {"edges", edges_json(g.edges())}}; }

json mutable_json(const std::vector<MutableEdge>& ms) {
    json j = json::array();
    for (auto& m : ms) j.push_back({{"edge", {m.edge.u, m.edge.v}}, {"internal", m.internal}});
    return j;
}

json diam_json(std::size_t d) { return d == kInfinite ? json("inf") : json(d); }

// output sink: stdout unless --out is set
struct Sink {
    std::string path;
    std::ofstream file;
    std::ostream& get() {
        if (path.empty()) return std::cout;
        if (!file.is_open()) {
            file.open(path);
            if (!file) throw InvalidInput("cannot write " + path);
        }
        return file;
    }
};

struct Common {
    std::uint64_t seed = 1;
    std::size_t samples = 100;
    std::string sampler = "reject";
    std::string cls = "all";
    std::string degrees;
    unsigned threads = 1;
    std::size_t burnin = 0, thin = 1, max_rejections = 10'000'000;
};

void add_sampling(CLI::App* sub, Common& c) {
    sub->add_option("--seed", c.seed, "random seed");
    sub->add_option("--samples", c.samples, "samples per size");
    sub->add_option("--sampler", c.sampler, "reject | prufer | mcmc | enumerate")
        ->check(CLI::IsMember({"reject", "prufer", "mcmc", "enumerate"}));
    sub->add_option("--class", c.cls, "all | connected | nocycle")->check(CLI::IsMember({"all", "connected", "nocycle"}));
    sub->add_option("--threads", c.threads, "worker threads");
    sub->add_option("--burnin", c.burnin, "swap-chain burn-in (0: 10 e ln e)");
    sub->add_option("--thin", c.thin, "swap-chain steps between class checks");
    sub->add_option("--max-rejections", c.max_rejections, "rejection cap");
}

SamplerConfig config_of(const Common& c) {
    SamplerConfig cfg;
    cfg.seed = c.seed;
    cfg.mcmc_burnin = c.burnin;
    cfg.mcmc_thin = c.thin;
    cfg.max_rejections = c.max_rejections;
    return cfg;
}

ExperimentSpec spec_of(const Common& c, const std::string& family, const std::vector<std::string>& params,
                       const std::vector<long>& sizes) {
    ExperimentSpec s;
    s.family = family;
    s.params = parse_params(params);
    s.sizes = sizes;
    s.samples = c.samples;
    s.seed = c.seed;
    s.sampler = parse_sampler(c.sampler);
    s.graph_class = parse_graph_class(c.cls);
    s.config = config_of(c);
    s.threads = std::max(1u, c.threads);
    return s;
}

// --config FILE: INI items without a section, or under [subcommand], become
// options of the chosen subcommand unless given on the command line
std::vector<std::string> with_config(CLI::App& app, std::vector<std::string> args) {
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
            args.erase(args.begin() + i, args.begin() + i + 2);
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
            args.erase(args.begin() + i);
            break;
        }
    }
    if (path.empty()) return args;
    std::size_t at = args.size();
    CLI::App* sub = nullptr;
    for (std::size_t i = 0; i < args.size() && !sub; ++i)
        if ((sub = app.get_subcommand_no_throw(args[i]))) at = i + 1;
    if (!sub) return args;
    std::ifstream in(path);
    if (!in) throw CLI::FileError::Missing(path);
    auto given = [&](const std::string& name) {
        for (std::size_t i = at; i < args.size(); ++i)
            if (args[i] == "--" + name || args[i].rfind("--" + name + "=", 0) == 0) return true;
        return false;
    };
    std::vector<std::string> extra;
    for (auto& item : CLI::ConfigINI().from_config(in)) {
        if (item.name.empty() || item.name == "++" || item.name == "--") continue;
        if (!(item.parents.empty() || (item.parents.size() == 1 && item.parents[0] == sub->get_name()))) continue;
        if (given(item.name)) continue;
        if (!sub->get_option_no_throw("--" + item.name)) throw CLI::ConfigError::Extras(item.name);
        std::string v;
        for (auto& x : item.inputs) v += (v.empty() ? "" : ",") + x;
        extra.push_back("--" + item.name + "=" + v);
    }
    args.insert(args.begin() + at, extra.begin(), extra.end());
    return args;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Random graphs with given degrees: decompositions, exact oracles and diameter experiments"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "key=value file; keys are the subcommand's option names");
    Sink sink;
    app.add_option("--out", sink.path, "write output here instead of stdout");

    // verify
    auto* verify = app.add_subcommand("verify", "run every exact oracle and sampler check, report JSON");
    VerifyOptions vo;
    std::string dump;
    verify->add_option("--seed", vo.seed, "random seed");
    verify->add_option("--samples", vo.samples, "samples per chi-square instance");
    verify->add_flag("--quick", vo.quick, "smaller guard bounds");
    verify->add_option("--dump", dump, "write failing counterexamples here");

    // diam-scaling
    auto* scaling = app.add_subcommand("diam-scaling", "mean diameter per size for a degree family");
    Common sc;
    std::string sc_family = "subbinary";
    std::vector<std::string> sc_params;
    std::vector<long> sc_sizes = {16, 64, 256, 1024};
    add_sampling(scaling, sc);
    scaling->add_option("--family", sc_family, "subbinary | deg3seq | all3 | mixed34");
    scaling->add_option("--params", sc_params, "family parameters, e.g. k=1,s=0")->delimiter(',');
    scaling->add_option("--sizes", sc_sizes, "comma-separated sizes (m for subbinary/deg3seq, n otherwise)")->delimiter(',');

    // kernel-diam
    auto* kdiam = app.add_subcommand("kernel-diam", "diam+ exceedances for minimum-degree-3 families and their cores");
    Common kc;
    std::string kc_family = "all3";
    std::vector<std::string> kc_params;
    std::vector<long> kc_sizes = {200, 1000};
    add_sampling(kdiam, kc);
    kdiam->add_option("--family", kc_family, "all3 | mixed34");
    kdiam->add_option("--params", kc_params, "twos=<degree-2 labels added to the cores>")->delimiter(',');
    kdiam->add_option("--sizes", kc_sizes, "comma-separated n")->delimiter(',');

    // tree-tail
    auto* tail = app.add_subcommand("tree-tail", "forest height tails and the biased binary tree table");
    Common tc;
    std::vector<std::string> tc_params;
    std::vector<long> tc_sizes = {4096}, tc_biased_m = {1, 4, 16};
    std::vector<double> tc_x = {1, 2, 4, 8}, tc_biased_x = {2, 3, 4};
    long biased_n = 4096;
    std::size_t biased_samples = 100000;
    tail->add_option("--seed", tc.seed, "random seed");
    tail->add_option("--samples", tc.samples, "forest samples per size");
    tail->add_option("--threads", tc.threads, "worker threads");
    tail->add_option("--params", tc_params, "roots=<r>,b=<children of internal vertices>")->delimiter(',');
    tail->add_option("--sizes", tc_sizes, "forest sizes |S|")->delimiter(',');
    tail->add_option("--x", tc_x, "forest thresholds x (height > x sqrt|S|)")->delimiter(',');
    tail->add_option("--biased-n", biased_n, "biased tree size n (0 skips the table)");
    tail->add_option("--biased-m", tc_biased_m, "composition lengths m")->delimiter(',');
    tail->add_option("--biased-x", tc_biased_x, "biased thresholds x")->delimiter(',');
    tail->add_option("--biased-samples", biased_samples, "biased samples per m");
    long histogram_m = 0;
    tail->add_option("--histogram-m", histogram_m, "instead: standardized height histogram of the biased tree for this m");

    // sample
    auto* sample = app.add_subcommand("sample", "draw graphs with a given degree sequence, one edge list per line");
    Common smp;
    add_sampling(sample, smp);
    sample->add_option("--degrees", smp.degrees, "e.g. 3,3,2,2 or 3^4,2^6 or 1:3,5:2")->required();
    smp.samples = 1;

    // decompose
    auto* dec = app.add_subcommand("decompose", "core, forest, kernel, simple kernel and H of one graph (JSON)");
    std::string edges, graph_file;
    dec->add_option("--edges", edges, "edge list, e.g. 1-2,2-3,3-1");
    dec->add_option("--graph", graph_file, "file with one edge per line");

    // explore
    auto* explore = app.add_subcommand("explore", "breadth-first exploration trace of a uniform augmented core (CSV)");
    Common ec;
    Label start = 0;
    explore->add_option("--degrees", ec.degrees, "core degree sequence (entries >= 2)")->required();
    explore->add_option("--seed", ec.seed, "random seed");
    explore->add_option("--start", start, "start vertex (default: smallest kernel vertex)");

    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        args = with_config(app, args);
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        auto& out = sink.get();
        if (*verify) {
            auto results = run_verify_suite(vo, [](const SuiteResult& r) {
                std::cerr << (r.passed ? "pass " : "FAIL ") << r.name << " (" << r.seconds << "s)\n";
            });
            auto rep = verify_report(results, vo);
            out << rep.dump(2) << '\n';
            if (!rep["passed"].get<bool>()) {
                json bad = json::array();
                for (auto& r : results)
                    if (!r.passed) bad.push_back({{"suite", r.name}, {"counterexample", r.counterexample}});
                if (!dump.empty()) std::ofstream(dump) << bad.dump(2) << '\n';
                std::cerr << "verification failed: " << bad.dump() << '\n';
                return 1;
            }
        } else if (*scaling) {
            auto s = spec_of(sc, sc_family, sc_params, sc_sizes);
            diam_scaling_csv(s, diam_scaling(s)).write(out);
        } else if (*kdiam) {
            auto s = spec_of(kc, kc_family, kc_params, kc_sizes);
            kernel_diam_csv(s, kernel_diam(s)).write(out);
        } else if (*tail && histogram_m > 0) {
            auto hs = standardized_height_histogram(biased_n, histogram_m, biased_samples, tc.seed, -4, 4, 16, std::max(1u, tc.threads));
            histogram_csv(biased_n, histogram_m, biased_samples, tc.seed, hs).write(out);
        } else if (*tail) {
            ExperimentSpec s;
            s.params = parse_params(tc_params);
            s.sizes = tc_sizes;
            s.samples = tc.samples;
            s.seed = tc.seed;
            s.threads = std::max(1u, tc.threads);
            auto rows = forest_tail(s, tc_x);
            if (biased_n > 0) {
                auto b = biased_tail(biased_n, tc_biased_m, tc_biased_x, biased_samples, tc.seed,
                                     s.threads);
                rows.insert(rows.end(), b.begin(), b.end());
            }
            tail_csv(s, rows).write(out);
        } else if (*sample) {
            auto d = parse_degrees(smp.degrees);
            auto kind = parse_sampler(smp.sampler);
            GraphSampler gs(d, parse_graph_class(smp.cls), kind, config_of(smp));
            if (!exact_sampler(kind)) {
                std::cerr << "warning: " << kMcmcWarning << '\n';
                out << "# " << kMcmcWarning << '\n';
            }
            for (std::size_t i = 0; i < smp.samples; ++i) {
                auto rng = make_stream(smp.seed, i);
                auto g = gs(rng);
                bool first = true;
                for (auto& e : g.edges()) {
                    out << (first ? "" : ",") << e.u << '-' << e.v;
                    first = false;
                }
                out << '\n';
            }
        } else if (*dec) {
            if (edges.empty() == graph_file.empty()) throw InvalidInput("give exactly one of --edges and --graph");
            auto g = parse_graph(edges.empty() ? slurp(graph_file) : edges);
            auto cd = decompose_core(g);
            auto k = kernel(g);
            auto ks = simple_kernel(g);
            auto h = simple_homeo_reduction(g, ks);
            json j;
            j["graph"] = graph_json(g);
            j["surplus"] = surplus(g.degrees());
            j["diameter"] = diameter(g);
            j["diameter_plus"] = diam_json(diameter_plus(g));
            j["cycle_vertices"] = cycle_vertex_count(g);
            j["core"] = graph_json(cd.core);
            j["forest"] = format_forest(cd.forest);
            json kp = json::array();
            for (auto& p : k.paths) kp.push_back({{"ends", {p.lo, p.hi}}, {"internal", p.internal}});
            j["kernel"] = {{"vertices", k.graph.vertices()}, {"edges", kp}};
            j["simple_kernel"] = {{"graph", graph_json(ks.graph)}, {"mutable", mutable_json(ks.mutable_edges)}};
            j["homeomorphic_reduction"] = {
                {"graph", graph_json(h.graph)}, {"mutable", mutable_json(h.mutable_edges)}, {"suppressed", h.suppressed}};
            if (is_connected(g))
                if (auto parts = diameter_bound_parts(g))
                    j["diameter_bound"] = {{"forest_height", parts->forest_height},
                                           {"core_diameter", parts->core_diameter},
                                           {"kernel_diameter", parts->kernel_diameter},
                                           {"max_path", parts->max_path},
                                           {"first_bound", parts->first_bound()},
                                           {"second_bound", parts->second_bound()}};
            out << j.dump(2) << '\n';
        } else if (*explore) {
            auto d = parse_degrees(ec.degrees);
            auto rng = make_stream(ec.seed, 0);
            auto a = sample_uniform_augmented_core(d, rng);
            Label v = start ? start : a.kernel_vertices().front();
            auto tr = explore_until(a, v, [](const ExplorationState&) { return false; });
            std::istringstream core(format_augmented_core(a));
            for (std::string line; std::getline(core, line);)
                if (!line.empty()) out << "# " << line << '\n';
            write_trace_csv(out, tr.rows);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
