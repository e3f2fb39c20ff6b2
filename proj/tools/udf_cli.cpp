#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "acceptance_suite.hpp"
#include "udf/eholzer.hpp"
#include "udf/suites.hpp"
#include "udf/udf.hpp"

using namespace udf;
using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    int order = -1;
    int degree = -1;
    int n_max = -1;
    int max_order = 4;
    int jobs = std::max(1u, std::thread::hardware_concurrency());
    std::string format = "text";
    std::string grid_file;
    std::string identity;
    std::string cache;
    std::string suite;
    std::string table;
    int m_max = 0, n_tab = 0;
    std::string lhs, rhs;
    bool via_r = false;
};

const std::vector<std::string> kIdentities{"assoc", "half", "lemma", "two-step", "zagier", "triple"};

int default_n_max(const std::string &id)
{
    if (id == "assoc" || id == "zagier") return 8;
    if (id == "half") return 16;
    if (id == "triple") return 3;
    return 30;
}

json config_json(int N, const weyl::Params &p)
{
    return {{"order", N},
            {"sigma", p.sigma},
            {"c_delta", p.c_delta.str()},
            {"inverse_reading", "moyal"}};
}

std::optional<engine::RTensor> load_cache(const std::string &path, const std::string &hash)
{
    std::ifstream in(path);
    if (!in) return std::nullopt;
    try {
        json j = json::parse(in);
        if (j.at("config_hash").get<std::string>() != hash) return std::nullopt;
        return engine::RTensor::from_json(j.at("R"));
    } catch (const std::exception &e) {
        std::cerr << "warning: cache " << path << " is unreadable (" << e.what() << "); recomputing\n";
        return std::nullopt;
    }
}

int cmd_compute_r(const RunConfig &c)
{
    int N = c.order < 0 ? 2 : c.order;
    if (N > c.max_order)
        throw UsageError("order " + std::to_string(N) + " exceeds the limit " + std::to_string(c.max_order));
    weyl::Params p;
    std::string hash = digest(config_json(N, p).dump());
    std::optional<engine::RTensor> R;
    if (!c.cache.empty()) R = load_cache(c.cache, hash);
    if (!R) {
        R = engine::extract_R(N, p);
        if (!c.cache.empty()) {
            std::ofstream out(c.cache);
            out << json{{"config", config_json(N, p)}, {"config_hash", hash}, {"R", R->to_json()}}.dump() << "\n";
            if (!out) std::cerr << "warning: could not write cache " << c.cache << "\n";
        }
    }
    if (c.format == "json")
        std::cout << R->to_json().dump(2) << "\n";
    else if (c.format == "latex")
        std::cout << R->latex();
    else
        std::cout << R->str() << "\n";
    return 0;
}

eholzer::GridSpec grid_spec(const RunConfig &c, const std::string &id)
{
    eholzer::GridSpec g;
    if (!c.grid_file.empty()) {
        std::ifstream in(c.grid_file);
        if (!in) throw UsageError("cannot read grid file " + c.grid_file);
        try {
            g = eholzer::GridSpec::from_json(json::parse(in));
        } catch (const json::exception &e) {
            throw UsageError(std::string("bad grid file: ") + e.what());
        }
    }
    if (g.identity.empty()) g.identity = id;
    if (c.n_max >= 0) g.n_max = c.n_max;
    if (g.n_max <= 0 && c.grid_file.empty()) g.n_max = default_n_max(g.identity);
    return g;
}

std::vector<VerificationReport> run_suite(const std::string &suite, const RunConfig &c)
{
    std::vector<VerificationReport> out;
    if (suite == "udf" || suite == "all") {
        int N = c.order < 0 ? 3 : c.order;
        if (N > c.max_order) throw UsageError("order exceeds the limit " + std::to_string(c.max_order));
        auto R = engine::extract_R(N);
        out.push_back(engine::verify_udf(R, N));
        if (N >= 1) out.push_back(engine::verify_twist(R, engine::twist(R, N), N));
    }
    if (suite == "hopf" || suite == "all") out.push_back(suites::hopf(c.degree < 0 ? 5 : c.degree));
    if (suite == "jet" || suite == "all") out.push_back(suites::jet(c.degree < 0 ? 4 : c.degree));
    if (suite == "fedosov" || suite == "all") out.push_back(suites::fedosov(c.degree < 0 ? 6 : c.degree));
    if (suite == "appendix" || suite == "all") {
        if (!c.grid_file.empty() || !c.identity.empty()) {
            auto g = grid_spec(c, c.identity);
            if (std::find(kIdentities.begin(), kIdentities.end(), g.identity) == kIdentities.end())
                throw UsageError("unknown identity " + g.identity);
            out.push_back(eholzer::run_grid(g, c.jobs));
        } else {
            for (auto &id : kIdentities) out.push_back(eholzer::run_grid(grid_spec(c, id), c.jobs));
        }
    }
    return out;
}

int cmd_verify(const RunConfig &c)
{
    auto reports = run_suite(c.suite, c);
    bool ok = true;
    for (auto &r : reports) ok = ok && r.ok();
    if (c.format == "json") {
        json arr = json::array();
        for (auto &r : reports) arr.push_back(r.to_json());
        std::cout << arr.dump(2) << "\n";
    } else {
        for (auto &r : reports) {
            std::cout << r.summary() << "\n";
            for (auto &e : r.entries)
                if (e.status != Status::Pass)
                    std::cout << "  " << status_name(e.status) << "  " << e.case_id
                              << (e.detail.empty() ? "" : "  (" + e.detail + ")") << "\n";
        }
        if (c.suite == "udf" || c.suite == "all") {
            int N = c.order < 0 ? 3 : c.order;
            if (N >= 1) {
                auto R = engine::extract_R(N);
                auto anti = engine::verify_twisted_antipode(engine::twist(R, N), N);
                std::cout << "informational, " << anti.summary() << "\n";
            }
        }
    }
    return ok ? 0 : 1;
}

int cmd_dump(const RunConfig &c)
{
    if (c.m_max < 0 || c.n_tab < 0) throw UsageError("table bounds must be >= 0");
    weyl::Kind k;
    try {
        k = weyl::parse_kind(c.table);
    } catch (const std::invalid_argument &) {
        throw UsageError("unknown table " + c.table);
    }
    weyl::Params p;
    auto s = weyl::solve_recursion(weyl::family_spec(k, p), p, c.m_max, c.n_tab);
    if (c.format == "json") {
        json arr = json::array();
        for (auto &[idx, coeff] : s.terms())
            if (idx.first <= c.m_max && idx.second <= c.n_tab)
                arr.push_back({{"m", idx.first}, {"n", idx.second}, {"coeff", coeff.to_json()}});
        std::cout << json{{"table", c.table}, {"entries", arr}}.dump(2) << "\n";
    } else {
        std::cout << s.table(c.m_max, c.n_tab, c.format == "latex");
    }
    return 0;
}

// "1", "f", "f:ab" or "f[1,0]:aB"
jet::CrossedElement parse_element(const std::string &s)
{
    std::string head = s, word;
    if (auto colon = s.find(':'); colon != std::string::npos) {
        head = s.substr(0, colon);
        word = s.substr(colon + 1);
    }
    jet::GroupWord w = word.empty() ? jet::GroupWord{} : jet::parse_word(word);
    if (head == "1") return jet::CrossedElement(jet::JetPoly(HbarScalar(1)), w);
    int a = 0, b = 0;
    if (auto br = head.find('['); br != std::string::npos) {
        if (std::sscanf(head.c_str() + br, "[%d,%d]", &a, &b) != 2 || a < 0 || b < 0)
            throw UsageError("bad function letter " + head);
        head = head.substr(0, br);
    }
    if (head.empty()) throw UsageError("empty function name in " + s);
    return jet::CrossedElement(jet::JetPoly::from_letter(jet::function_letter(head, a, b)), w);
}

int cmd_star_eval(const RunConfig &c)
{
    int N = c.order < 0 ? 2 : c.order;
    if (N > c.max_order) throw UsageError("order exceeds the limit " + std::to_string(c.max_order));
    auto a = parse_element(c.lhs), b = parse_element(c.rhs);
    jet::CrossedElement r;
    if (c.via_r) {
        r = engine::star_via_R(engine::extract_R(N), a, b, N);
    } else {
        engine::StarEngine eng(N);
        r = eng.star(a, b);
    }
    if (c.format == "json") {
        json arr = json::array();
        for (auto &[w, p] : r.terms()) arr.push_back({{"word", jet::word_str(w)}, {"coeff", p.to_json()}});
        std::cout << arr.dump(2) << "\n";
    } else {
        std::cout << r.str() << "\n";
    }
    return 0;
}

int paper_check()
{
    bool ok = true;
    for (int id = 1; id <= acceptance::kCriteria; ++id) {
        auto r = acceptance::run(id);
        ok = ok && r.pass;
        std::cout << "[" << acceptance::location(id) << "]\n" << acceptance::line(r) << "\n";
    }
    std::cout << (ok ? "all criteria pass" : "some criteria fail") << "\n";
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char **argv)
{
    CLI::App app{"universal deformation formula toolkit"};
    app.require_subcommand(0, 1);
    RunConfig c;
    bool paper = false;
    app.add_flag("--paper-check", paper, "run the acceptance criteria and print a summary");
    auto common = [&](CLI::App *s) {
        s->add_option("--format", c.format, "text, json or latex")->check(CLI::IsMember({"text", "json", "latex"}));
        s->add_option("--order", c.order, "hbar order N")->check(CLI::NonNegativeNumber);
        s->add_option("--max-order", c.max_order, "hard limit on N")->check(CLI::NonNegativeNumber);
    };

    auto *compute = app.add_subcommand("compute-r", "compute R to a given order");
    common(compute);
    compute->add_option("--cache", c.cache, "cache file");

    auto *verify = app.add_subcommand("verify", "run a verification suite");
    common(verify);
    verify->add_option("suite", c.suite, "udf, fedosov, hopf, jet, appendix or all")
        ->required()
        ->check(CLI::IsMember({"udf", "fedosov", "hopf", "jet", "appendix", "all"}));
    verify->add_option("--degree", c.degree, "degree cutoff")->check(CLI::NonNegativeNumber);
    verify->add_option("--n-max", c.n_max, "largest n for appendix identities")->check(CLI::NonNegativeNumber);
    verify->add_option("--identity", c.identity, "appendix identity")->check(CLI::IsMember(kIdentities));
    verify->add_option("--grid", c.grid_file, "grid spec JSON file");
    verify->add_option("--jobs", c.jobs, "worker threads")->check(CLI::PositiveNumber);

    auto *dump = app.add_subcommand("dump", "print a coefficient table");
    common(dump);
    dump->add_option("table", c.table, "hat_f, alpha_hat_g, u_alpha_inv, u_alpha_beta or v_alphabeta")->required();
    dump->add_option("m_max", c.m_max)->required();
    dump->add_option("n_max", c.n_tab)->required();

    auto *star = app.add_subcommand("star-eval", "evaluate a star product in the jet model");
    common(star);
    star->add_option("lhs", c.lhs, "element such as f:ab, g[1,0]:B or 1")->required();
    star->add_option("rhs", c.rhs, "element")->required();
    star->add_flag("--via-r", c.via_r, "use m(R(a (x) b)) instead of the five-factor product");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 2;
    }
    try {
        if (paper) return paper_check();
        if (compute->parsed()) return cmd_compute_r(c);
        if (verify->parsed()) return cmd_verify(c);
        if (dump->parsed()) return cmd_dump(c);
        if (star->parsed()) return cmd_star_eval(c);
        std::cerr << app.help();
        return 2;
    } catch (const UsageError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
