#include <atomic>
#include <chrono>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pbwdeg/cache.hpp"
#include "pbwdeg/chevrep.hpp"
#include "pbwdeg/degenring.hpp"
#include "pbwdeg/pbwgrade.hpp"
#include "pbwdeg/report.hpp"
#include "pbwdeg/weyl_dim.hpp"
#include "pbwdeg/weylmod.hpp"

namespace {

using namespace pbwdeg;
using Json = report::Json;

enum class Format { Json, Csv, Table };

struct RunConfig {
    std::string cartan;
    std::string lambda;
    std::string mu;
    long long p = 2;
    int n_max = 3;
    int trials = 5;
    long long ceiling = 20000;
    std::string format = "table";
    std::string cache_dir;
    int jobs = 1;
    std::string realization = "chain";
    bool no_timing = false;
    std::string cartans;
    std::string primes;
};

struct Context {
    RootSystemData rs;
    Format format;
    BuildOptions build;
};

Format parse_format(const std::string &s) {
    if (s == "json")
        return Format::Json;
    if (s == "csv")
        return Format::Csv;
    if (s == "table")
        return Format::Table;
    throw InvalidArgument("unknown format '" + s + "' (json, csv, table)");
}

Weight require_weight(const RootSystemData &rs, const std::string &text, const char *flag) {
    if (text.empty())
        throw InvalidArgument(std::string("missing ") + flag);
    Weight w = parse_weight(text);
    if (static_cast<int>(w.size()) != rs.rank())
        throw DimensionMismatch(std::string(flag) + " has " + std::to_string(w.size()) +
                                " coordinates, " + rs.cartan_type.name() + " has rank " +
                                std::to_string(rs.rank()));
    if (!w.is_dominant())
        throw InvalidArgument(std::string(flag) + " must be dominant");
    return w;
}

Context make_context(const RunConfig &cfg) {
    if (cfg.cartan.empty())
        throw InvalidArgument("missing --cartan");
    Context c{build_root_system(CartanType::parse(cfg.cartan)), parse_format(cfg.format),
              BuildOptions{parse_realization(cfg.realization), std::nullopt}};
    if (cfg.ceiling < 1)
        throw InvalidArgument("--ceiling must be positive");
    if (cfg.trials < 0)
        throw InvalidArgument("--trials must be nonnegative");
    prime_modulus(cfg.p);
    return c;
}

std::string json_text(const Json &j) { return j.dump(2) + "\n"; }

/// The module V(lam) mod p, from the cache when possible.
std::unique_ptr<WeylModuleP> acquire_module(const RunConfig &cfg, const RootSystemData &rs, const Weight &lam,
                                            long long p, const BuildOptions &build) {
    require_within_ceiling(weyl_dim(rs, lam), cfg.ceiling);
    if (!cfg.cache_dir.empty()) {
        ModuleCache cache(cfg.cache_dir);
        if (auto m = cache.load(rs, lam, p, build)) {
            std::cerr << "cache hit: " << cache.entry_path(ModuleCache::key_string(rs, lam, m->p(), build.realization))
                      << "\n";
            return m;
        }
    }
    auto lattice = std::make_shared<const WeylLatticeZ>(build_weyl_lattice(rs, lam, build));
    return std::make_unique<WeylModuleP>(rs, lattice, p);
}

void persist(const RunConfig &cfg, const WeylModuleP &m, const BuildOptions &build) {
    if (!cfg.cache_dir.empty())
        ModuleCache(cfg.cache_dir).store(m, build);
}

/// Order-independent digest of every operator held by the module.
std::string operator_digest(const WeylModuleP &m) {
    std::ostringstream os;
    for (const auto &[k, op] : m.cached_operators()) {
        const auto &[root, power, raise] = k;
        os << root << ' ' << power << ' ' << raise << '\n';
        op.write_triplets(os);
    }
    return ModuleCache::key_hash(os.str());
}

int cmd_root_system(const RunConfig &cfg) {
    const Context c = make_context(cfg);
    const auto &rs = c.rs;
    Json j;
    j["cartan"] = rs.cartan_type.name();
    j["rank"] = rs.rank();
    j["cartan_matrix"] = rs.cartan;
    j["num_positive_roots"] = rs.N;
    Json roots = Json::array();
    for (int b = 0; b < rs.N; ++b) {
        Json r;
        r["index"] = b;
        r["simple_coords"] = rs.positive_roots[b];
        r["weight"] = report::weight_json(rs.root_weight(b));
        r["height"] = rs.heights[b];
        roots.push_back(std::move(r));
    }
    j["positive_roots"] = std::move(roots);
    j["rho"] = report::weight_json(rs.rho);
    j["tool_version"] = kToolVersion;
    switch (c.format) {
    case Format::Json:
        std::cout << json_text(j);
        break;
    case Format::Csv:
        std::cout << "index,simple_coords,weight,height\n";
        for (int b = 0; b < rs.N; ++b)
            std::cout << b << ",\"" << Weight(rs.positive_roots[b]).to_string() << "\",\""
                      << rs.root_weight(b).to_string() << "\"," << rs.heights[b] << "\n";
        break;
    case Format::Table:
        std::cout << rs.cartan_type.name() << ", " << rs.N << " positive roots, rho = " << rs.rho << "\n";
        for (int b = 0; b < rs.N; ++b)
            std::cout << "  " << b << "  alpha " << Weight(rs.positive_roots[b]) << "  weight "
                      << rs.root_weight(b) << "  height " << rs.heights[b] << "\n";
        break;
    }
    return 0;
}

int cmd_weyl_dim(const RunConfig &cfg) {
    const Context c = make_context(cfg);
    const Weight lam = require_weight(c.rs, cfg.lambda, "--lambda");
    const Integer d = weyl_dim(c.rs, lam);
    switch (c.format) {
    case Format::Json: {
        Json j;
        j["cartan"] = c.rs.cartan_type.name();
        j["lambda"] = report::weight_json(lam);
        j["weyl_dim"] = d.str();
        j["tool_version"] = kToolVersion;
        std::cout << json_text(j);
        break;
    }
    case Format::Csv:
        std::cout << "cartan,lambda,weyl_dim\n"
                  << c.rs.cartan_type.name() << ",\"" << lam.to_string() << "\"," << d << "\n";
        break;
    case Format::Table:
        std::cout << "dim V" << lam << " = " << d << "\n";
        break;
    }
    return 0;
}

int cmd_build_module(const RunConfig &cfg) {
    const Context c = make_context(cfg);
    const Weight lam = require_weight(c.rs, cfg.lambda, "--lambda");
    auto m = acquire_module(cfg, c.rs, lam, cfg.p, c.build);
    for (int b = 0; b < c.rs.N; ++b)
        for (long long k = 1; k <= m->nilpotency(b); k *= m->p())
            for (bool raise : {false, true})
                m->op(b, static_cast<int>(k), raise);
    persist(cfg, *m, c.build);
    const std::string digest = operator_digest(*m);
    switch (c.format) {
    case Format::Json: {
        Json j;
        j["cartan"] = c.rs.cartan_type.name();
        j["p"] = m->p();
        j["lambda"] = report::weight_json(lam);
        j["dim"] = m->dim();
        j["num_weights"] = m->blocks().size();
        j["num_operators"] = m->cached_operators().size();
        j["operator_digest"] = digest;
        j["tool_version"] = kToolVersion;
        std::cout << json_text(j);
        break;
    }
    case Format::Csv:
        std::cout << "cartan,p,lambda,dim,num_weights,num_operators,operator_digest\n"
                  << c.rs.cartan_type.name() << ',' << m->p() << ",\"" << lam.to_string() << "\"," << m->dim()
                  << ',' << m->blocks().size() << ',' << m->cached_operators().size() << ',' << digest << "\n";
        break;
    case Format::Table:
        std::cout << "V" << lam << " over F_" << m->p() << ": dim " << m->dim() << ", " << m->blocks().size()
                  << " weights, " << m->cached_operators().size() << " operators, digest " << digest << "\n";
        break;
    }
    return 0;
}

int cmd_pbw_dims(const RunConfig &cfg) {
    const Context c = make_context(cfg);
    const Weight lam = require_weight(c.rs, cfg.lambda, "--lambda");
    auto m = acquire_module(cfg, c.rs, lam, cfg.p, c.build);
    const PBWGraded g = pbw_filtration(*m);
    persist(cfg, *m, c.build);
    switch (c.format) {
    case Format::Json: {
        Json j;
        j["cartan"] = c.rs.cartan_type.name();
        j["p"] = g.p;
        j["lambda"] = report::weight_json(lam);
        j["dim"] = m->dim();
        j["graded_dims"] = g.graded_dims;
        j["tool_version"] = kToolVersion;
        std::cout << json_text(j);
        break;
    }
    case Format::Csv:
        std::cout << "cartan,p,lambda,n,graded_dim\n";
        for (std::size_t n = 0; n < g.graded_dims.size(); ++n)
            std::cout << c.rs.cartan_type.name() << ',' << g.p << ",\"" << lam.to_string() << "\"," << n << ','
                      << g.graded_dims[n] << "\n";
        break;
    case Format::Table:
        std::cout << "graded dims of V^a" << lam << " mod " << g.p << ": " << report::dims_text(g.graded_dims)
                  << " (total " << m->dim() << ")\n";
        break;
    }
    return 0;
}

F0Report run_f0(const RunConfig &cfg, const RootSystemData &rs, long long p, const BuildOptions &build) {
    const auto start = std::chrono::steady_clock::now();
    auto m = acquire_module(cfg, rs, splitting_weight(rs, p), p, build);
    F0Report r = check_f0_module(*m);
    persist(cfg, *m, build);
    r.elapsed_ms = cfg.no_timing
                       ? 0.0
                       : std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return r;
}

int cmd_check_f0(const RunConfig &cfg) {
    const Context c = make_context(cfg);
    const F0Report r = run_f0(cfg, c.rs, cfg.p, c.build);
    switch (c.format) {
    case Format::Json:
        std::cout << json_text(report::to_json(r));
        break;
    case Format::Csv:
        std::cout << report::to_csv(r);
        break;
    case Format::Table:
        std::cout << report::to_table(r);
        break;
    }
    return 0;
}

std::vector<std::string> split_list(const std::string &s, const char *flag) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty())
            out.push_back(item);
    if (out.empty())
        throw InvalidArgument(std::string("empty ") + flag);
    return out;
}

int cmd_check_f0_sweep(const RunConfig &cfg) {
    const Format fmt = parse_format(cfg.format);
    const BuildOptions build{parse_realization(cfg.realization), std::nullopt};
    if (cfg.jobs < 1)
        throw InvalidArgument("--jobs must be positive");
    struct Task {
        RootSystemData rs;
        long long p;
        std::optional<F0Report> result;
        std::string skipped;
        std::string error;
        int error_code = 0;
    };
    std::vector<long long> primes;
    for (const auto &s : split_list(cfg.primes, "--primes")) {
        const long long p = parse_weight(s)[0];
        if (s.find(',') != std::string::npos)
            throw InvalidArgument("malformed prime '" + s + "'");
        prime_modulus(p);
        primes.push_back(p);
    }
    std::vector<Task> tasks;
    for (const auto &name : split_list(cfg.cartans, "--cartans")) {
        const RootSystemData rs = build_root_system(CartanType::parse(name));
        for (long long p : primes)
            tasks.push_back({rs, p, std::nullopt, {}, {}, 0});
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next++) < tasks.size();) {
            Task &t = tasks[i];
            try {
                t.result = run_f0(cfg, t.rs, t.p, build);
            } catch (const SizeCeilingExceeded &e) {
                t.skipped = e.what();
            } catch (const DefectError &e) {
                t.error = e.what();
                t.error_code = 3;
            } catch (const std::exception &e) {
                t.error = e.what();
                t.error_code = 3;
            }
        }
    };
    std::vector<std::thread> pool;
    const int n_threads = std::min<int>(cfg.jobs, static_cast<int>(tasks.size()));
    for (int i = 0; i < n_threads; ++i)
        pool.emplace_back(worker);
    for (auto &th : pool)
        th.join();

    int code = 0;
    for (const auto &t : tasks)
        if (t.error_code) {
            std::cerr << "error: " << t.rs.cartan_type.name() << " p=" << t.p << ": " << t.error << "\n";
            code = std::max(code, t.error_code);
        }
    auto status = [](const Task &t) { return t.result ? "ok" : (t.skipped.empty() ? "error" : "skipped"); };
    switch (fmt) {
    case Format::Json: {
        Json arr = Json::array();
        for (const auto &t : tasks) {
            Json j;
            if (t.result) {
                j = report::to_json(*t.result);
            } else {
                j["cartan"] = t.rs.cartan_type.name();
                j["p"] = t.p;
                j["weight"] = report::weight_json(splitting_weight(t.rs, t.p));
                j["reason"] = t.skipped.empty() ? t.error : t.skipped;
            }
            j["status"] = status(t);
            arr.push_back(std::move(j));
        }
        Json out;
        out["results"] = std::move(arr);
        out["tool_version"] = kToolVersion;
        std::cout << json_text(out);
        break;
    }
    case Format::Csv:
        std::cout << "cartan,p,status,degree,nonzero,graded_dims,elapsed_ms,reason\n";
        for (const auto &t : tasks) {
            std::cout << t.rs.cartan_type.name() << ',' << t.p << ',' << status(t) << ',';
            if (t.result)
                std::cout << t.result->degree << ',' << (t.result->nonzero ? "true" : "false") << ",\""
                          << report::dims_text(t.result->graded_dims) << "\"," << t.result->elapsed_ms << ",\n";
            else
                std::cout << ",,,,\"" << (t.skipped.empty() ? t.error : t.skipped) << "\"\n";
        }
        break;
    case Format::Table:
        for (const auto &t : tasks) {
            std::cout << t.rs.cartan_type.name() << " p=" << t.p << ": ";
            if (t.result)
                std::cout << "f0 v " << (t.result->nonzero ? "nonzero" : "zero") << ", graded dims "
                          << report::dims_text(t.result->graded_dims) << "\n";
            else
                std::cout << status(t) << " (" << (t.skipped.empty() ? t.error : t.skipped) << ")\n";
        }
        break;
    }
    return code;
}

RingOptions ring_options(const RunConfig &cfg, const Context &c) { return RingOptions{cfg.ceiling, c.build}; }

template <class Report> void emit(const Report &r, Format fmt) {
    switch (fmt) {
    case Format::Json:
        std::cout << json_text(report::to_json(r));
        break;
    case Format::Csv:
        std::cout << report::to_csv(r);
        break;
    case Format::Table:
        std::cout << report::to_table(r);
        break;
    }
}

int cmd_check_mult(const RunConfig &cfg) {
    const Context c = make_context(cfg);
    const Weight lam = require_weight(c.rs, cfg.lambda, "--lambda");
    const Weight mu = require_weight(c.rs, cfg.mu, "--mu");
    emit(check_mult_surjective(c.rs, lam, mu, cfg.p, ring_options(cfg, c)), c.format);
    return 0;
}

int cmd_check_gen(const RunConfig &cfg) {
    const Context c = make_context(cfg);
    const Weight lam = require_weight(c.rs, cfg.lambda, "--lambda");
    emit(check_degree_one_generation(c.rs, lam, cfg.p, cfg.n_max, ring_options(cfg, c)), c.format);
    return 0;
}

int cmd_hilbert(const RunConfig &cfg) {
    const Context c = make_context(cfg);
    const Weight lam = require_weight(c.rs, cfg.lambda, "--lambda");
    emit(hilbert_function(c.rs, lam, cfg.p, cfg.n_max, ring_options(cfg, c)), c.format);
    return 0;
}

int cmd_validate(const RunConfig &cfg) {
    const Context c = make_context(cfg);
    const Weight lam = require_weight(c.rs, cfg.lambda, "--lambda");
    require_within_ceiling(weyl_dim(c.rs, lam), cfg.ceiling);
    auto lattice = std::make_shared<const WeylLatticeZ>(build_weyl_lattice(c.rs, lam, c.build));
    std::string stability = "ok";
    try {
        check_lattice_stability(c.rs, lattice);
    } catch (const NonIntegralDividedPower &e) {
        stability = e.what();
    }
    WeylModuleP m(c.rs, lattice, cfg.p);
    const ValidationReport rel = validate_relations(m);
    const OrderInvarianceReport inv = check_F0_order_invariance(m, cfg.trials);
    const bool ok = rel.ok && stability == "ok" && inv.ok();
    switch (c.format) {
    case Format::Json: {
        Json j;
        j["cartan"] = c.rs.cartan_type.name();
        j["p"] = m.p();
        j["lambda"] = report::weight_json(lam);
        j["relations_ok"] = rel.ok;
        j["witness"] = rel.witness;
        j["lattice_stable"] = stability == "ok";
        j["lattice_detail"] = stability;
        j["trials"] = cfg.trials;
        j["f0_order_invariant"] = inv.invariant;
        j["f0_central"] = inv.central;
        j["ok"] = ok;
        j["tool_version"] = kToolVersion;
        std::cout << json_text(j);
        break;
    }
    case Format::Csv:
        std::cout << "cartan,p,lambda,relations_ok,lattice_stable,f0_order_invariant,f0_central,ok\n"
                  << c.rs.cartan_type.name() << ',' << m.p() << ",\"" << lam.to_string() << "\"," << rel.ok << ','
                  << (stability == "ok") << ',' << inv.invariant << ',' << inv.central << ',' << ok << "\n";
        break;
    case Format::Table:
        std::cout << "relations        " << (rel.ok ? "ok" : "FAIL: " + rel.witness) << "\n"
                  << "lattice stable   " << stability << "\n"
                  << "F0 order (" << cfg.trials << " trials) " << (inv.invariant ? "invariant" : "NOT invariant")
                  << "\n"
                  << "F0 central       " << (inv.central ? "yes" : "no") << "\n";
        break;
    }
    if (!ok)
        std::cerr << "validation failed\n";
    return ok ? 0 : 3;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"PBW degenerations of Weyl modules over finite fields"};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);
    RunConfig cfg;

    auto common = [&](CLI::App *sub, bool needs_lambda) {
        sub->add_option("--cartan", cfg.cartan, "Cartan type, e.g. A2, B3, G2")->required();
        if (needs_lambda)
            sub->add_option("--lambda", cfg.lambda, "highest weight, comma-separated fundamental coordinates")
                ->required();
        sub->add_option("--format", cfg.format, "output format: json, csv, table")
            ->capture_default_str()
            ->check(CLI::IsMember({"json", "csv", "table"}));
        sub->add_option("--ceiling", cfg.ceiling, "largest module dimension to construct")->capture_default_str();
        sub->add_option("--realization", cfg.realization, "tensor realization: chain, split, fundamental")
            ->capture_default_str()
            ->check(CLI::IsMember({"chain", "split", "fundamental"}));
    };
    auto prime = [&](CLI::App *sub) { sub->add_option("--p", cfg.p, "prime")->required(); };
    auto cache = [&](CLI::App *sub) { sub->add_option("--cache-dir", cfg.cache_dir, "module cache directory"); };

    std::vector<std::pair<CLI::App *, int (*)(const RunConfig &)>> commands;
    auto add = [&](const char *name, const char *desc, int (*fn)(const RunConfig &)) {
        CLI::App *sub = app.add_subcommand(name, desc);
        commands.emplace_back(sub, fn);
        return sub;
    };

    common(add("root-system", "positive roots and Cartan data", cmd_root_system), false);

    common(add("weyl-dim", "Weyl dimension of V(lambda)", cmd_weyl_dim), true);

    auto *build = add("build-module", "construct V(lambda) mod p and its divided powers", cmd_build_module);
    common(build, true);
    prime(build);
    cache(build);

    auto *pbw = add("pbw-dims", "graded dimensions of the PBW degeneration", cmd_pbw_dims);
    common(pbw, true);
    prime(pbw);
    cache(pbw);

    auto *f0 = add("check-f0", "decide whether f0 v is nonzero on V(2(p-1)rho)", cmd_check_f0);
    common(f0, false);
    prime(f0);
    cache(f0);
    f0->add_flag("--no-timing", cfg.no_timing, "report elapsed_ms as 0");

    auto *sweep = add("check-f0-sweep", "check-f0 over ranges of types and primes", cmd_check_f0_sweep);
    sweep->add_option("--cartans", cfg.cartans, "comma-separated Cartan types")->required();
    sweep->add_option("--primes", cfg.primes, "comma-separated primes")->required();
    sweep->add_option("--jobs", cfg.jobs, "parallel tasks")->capture_default_str();
    sweep->add_option("--format", cfg.format, "output format")
        ->capture_default_str()
        ->check(CLI::IsMember({"json", "csv", "table"}));
    sweep->add_option("--ceiling", cfg.ceiling, "largest module dimension")->capture_default_str();
    sweep->add_option("--realization", cfg.realization, "tensor realization")
        ->capture_default_str()
        ->check(CLI::IsMember({"chain", "split", "fundamental"}));
    sweep->add_flag("--no-timing", cfg.no_timing, "report elapsed_ms as 0");
    cache(sweep);

    auto *mult = add("check-mult", "surjectivity of degenerate multiplication", cmd_check_mult);
    common(mult, true);
    prime(mult);
    mult->add_option("--mu", cfg.mu, "second highest weight")->required();

    auto *gen = add("check-gen", "degree-one generation up to n_max", cmd_check_gen);
    common(gen, true);
    prime(gen);
    gen->add_option("--n-max", cfg.n_max, "largest degree")->capture_default_str();

    auto *hil = add("hilbert", "Hilbert function of the degree-one generated ring", cmd_hilbert);
    common(hil, true);
    prime(hil);
    hil->add_option("--n-max", cfg.n_max, "largest degree")->capture_default_str();

    auto *val = add("validate", "relation, lattice and F0 checks on V(lambda) mod p", cmd_validate);
    common(val, true);
    prime(val);
    val->add_option("--trials", cfg.trials, "random root orders for F0")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 1;
    }

    try {
        for (const auto &[sub, fn] : commands)
            if (sub->parsed())
                return fn(cfg);
        return 1;
    } catch (const UserError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const SizeCeilingExceeded &e) {
        std::cerr << "refused: " << e.what() << "\n";
        return 2;
    } catch (const DefectError &e) {
        std::cerr << "internal defect: " << e.what() << "\n";
        return 3;
    } catch (const std::exception &e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
