#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "superalg/quotient.hpp"
#include "superalg/suites.hpp"

using namespace superalg;
using nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct RunConfig {
    int m = 1;
    int n = 0;
    int deg = 4;
    int kmax = 3;
    int R = 2;
    std::string level = "critical";
    std::string lambda;
    std::string modules = "natural,natural";
    std::string points = "0,1";
    std::string out;
    int jobs = 1;

    SuperDim sd() const { return {m, n}; }
};

int env_int(const char* name, int fallback) {
    const char* v = std::getenv(name);
    return v ? std::atoi(v) : fallback;
}

std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

std::vector<Rational> parse_list(const std::string& s) {
    std::vector<Rational> out;
    for (const auto& item : split(s)) out.push_back(parse_rational(item));
    return out;
}

void validate(const RunConfig& c) {
    if (c.m < 0 || c.n < 0 || c.m + c.n < 1) throw UsageError("need m, n >= 0 and m + n >= 1");
    if (c.m + c.n > env_int("SUPERALG_DIM_CAP", 4)) throw CapExceeded("m + n above the dimension cap");
    if (c.kmax < 1 || c.kmax > env_int("SUPERALG_KMAX_CAP", 4)) throw CapExceeded("kmax out of range");
    if (c.deg < 1 || c.deg > limits_from_env().degree_cap) throw CapExceeded("deg out of range");
    if (c.R < 1 || c.R > env_int("SUPERALG_ORDER_CAP", 4)) throw CapExceeded("R out of range");
    if (c.jobs < 1) throw UsageError("jobs must be positive");
    const auto pts = parse_list(c.points);
    for (std::size_t r = 0; r < pts.size(); ++r)
        for (std::size_t s = 0; s < r; ++s)
            if (pts[r] == pts[s]) throw CoincidentPoints("coincident points " + pts[r].get_str());
    if (!c.lambda.empty() && int(parse_list(c.lambda).size()) != c.m + c.n)
        throw UsageError("--lambda needs m+n components");
}

Rational parse_level(const RunConfig& c) {
    if (c.level == "critical") return Rational(c.n - c.m);
    return parse_rational(c.level);
}

void emit(const RunConfig& c, const std::string& text) {
    if (c.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(c.out);
    if (!f) throw UsageError("cannot write " + c.out);
    f << text;
}

using Suite = std::function<CheckReport()>;

std::vector<std::pair<std::string, Suite>> suites_for(const std::string& name, const RunConfig& c) {
    const auto sd = c.sd();
    const int N = sd.size();
    const auto lambda = c.lambda.empty() ? default_generic_weight(sd) : parse_list(c.lambda);
    std::vector<std::pair<std::string, Suite>> out;
    auto want = [&](const char* s) { return name == s || name == "all"; };
    if (want("mmm")) {
        out.emplace_back("mmm", [=] { return suite_mmm(sd, c.deg); });
        out.emplace_back("expansions", [=] { return suite_expansions(sd, std::min(c.kmax, 3)); });
    }
    if (want("berezinian"))
        out.emplace_back("berezinian", [=] {
            return suite_berezinian(sd, std::min(c.deg, 4), N <= 3 ? std::min(c.kmax, 3) : 0);
        });
    if (want("newton")) out.emplace_back("newton", [=] { return suite_newton(sd, c.kmax, c.R); });
    if (want("sugawara")) {
        const auto level = parse_level(c);
        out.emplace_back("manin-T", [=] { return suite_manin_T(sd); });
        out.emplace_back("sugawara", [=] { return suite_sugawara(sd, c.kmax, level); });
        if (level == Rational(sd.n - sd.m))
            out.emplace_back("off-critical", [=] { return suite_off_critical(sd); });
        out.emplace_back("commutativity", [=] { return suite_commutativity(sd, c.kmax); });
    }
    if (want("singular")) {
        out.emplace_back("singular", [=] { return suite_singular(sd, c.kmax, c.R); });
        out.emplace_back("det-lambda", [=] { return suite_det_lambda(sd); });
        out.emplace_back("generators", [=] { return suite_generators(sd, lambda, c.R); });
    }
    if (want("gaudin")) {
        const auto mods = split(c.modules);
        const auto pts = parse_list(c.points);
        const auto lam = c.lambda.empty() ? std::vector<Rational>{} : lambda;
        out.emplace_back("gaudin", [=] { return suite_gaudin(sd, mods, pts, c.kmax, lam); });
    }
    return out;
}

// Suites may run concurrently; results are gathered in the listed order.
json run_suites(const std::vector<std::pair<std::string, Suite>>& suites, int jobs, bool* pass) {
    std::vector<CheckReport> reports(suites.size());
    for (std::size_t start = 0; start < suites.size(); start += jobs) {
        std::vector<std::future<CheckReport>> batch;
        const std::size_t end = std::min(suites.size(), start + std::size_t(jobs));
        for (std::size_t k = start; k < end; ++k)
            batch.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred,
                                       suites[k].second));
        for (std::size_t k = start; k < end; ++k) reports[k] = batch[k - start].get();
    }
    json j = json::array();
    *pass = true;
    for (std::size_t k = 0; k < suites.size(); ++k) {
        auto r = reports[k].to_json();
        r["suite"] = suites[k].first;
        *pass = *pass && reports[k].pass;
        j.push_back(r);
    }
    return j;
}

json config_json(const RunConfig& c) {
    return {{"m", c.m}, {"n", c.n}, {"deg", c.deg}, {"kmax", c.kmax}, {"R", c.R}};
}

std::string family_lines(const SuperDim& sd, FamilyKind kind, int kmax) {
    const auto fam = compute_family(sd, kind, kmax);
    std::string s;
    for (const auto& [kl, v] : fam.coeff)
        s += family_name(kind) + std::to_string(kl.first) + std::to_string(kl.second) + " = " +
             v.str() + "\n";
    return s;
}

std::string hc_lines(const SuperDim& sd, FamilyKind kind, int kmax, int R) {
    const auto w = Weight::symbolic(sd);
    std::string s;
    for (int k = 1; k <= kmax; ++k) {
        const auto img = hc_image_fields(sd, kind, k, R, w);
        for (int l = 0; l <= k; ++l)
            for (int r = 0; r >= -R; --r) {
                const auto c = supercommutative_normal_form(diffop_coefficient(img, k, l, r));
                if (c.is_zero()) continue;
                s += family_name(kind) + std::to_string(k) + std::to_string(l) + "[" +
                     std::to_string(r) + "] = " + c.str() + "\n";
            }
    }
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Identities for right quantum superalgebras, Segal-Sugawara vectors and Gaudin models"};
    app.require_subcommand(1);
    RunConfig cfg;
    auto common = [&](CLI::App* sub) {
        sub->add_option("--m", cfg.m, "even dimension");
        sub->add_option("--n", cfg.n, "odd dimension");
        sub->add_option("--kmax", cfg.kmax, "largest k");
        sub->add_option("--out", cfg.out, "write the report here instead of stdout");
    };

    std::string suite;
    auto* verify = app.add_subcommand("verify", "run an identity suite");
    verify->add_option("suite", suite)
        ->required()
        ->check(CLI::IsMember({"mmm", "berezinian", "newton", "sugawara", "singular", "gaudin", "all"}));
    common(verify);
    verify->add_option("--deg", cfg.deg, "degree or u-order cap");
    verify->add_option("--R", cfg.R, "z-order cap for images");
    verify->add_option("--level", cfg.level, "critical or a rational value");
    verify->add_option("--lambda", cfg.lambda, "comma separated weight");
    verify->add_option("--modules", cfg.modules, "comma separated module list");
    verify->add_option("--points", cfg.points, "comma separated evaluation points");
    verify->add_option("--jobs", cfg.jobs, "suites run concurrently");

    std::string object, kind = "s";
    auto* dump = app.add_subcommand("dump", "print an expansion");
    dump->add_option("object", object)
        ->required()
        ->check(CLI::IsMember({"bos", "ferm", "berezinian", "sugawara-family", "hc-images", "lambda-det"}));
    dump->add_option("kind", kind, "family: s, sigma, h or b")->check(CLI::IsMember({"s", "sigma", "h", "b"}));
    common(dump);
    dump->add_option("--deg", cfg.deg, "series order");
    dump->add_option("--R", cfg.R, "z-order cap");

    auto* sug = app.add_subcommand("sugawara", "annihilation of all families at a level");
    common(sug);
    sug->add_option("--level", cfg.level, "critical or a rational value");

    auto* gaud = app.add_subcommand("gaudin", "commutativity of higher Gaudin Hamiltonians");
    common(gaud);
    gaud->add_option("--modules", cfg.modules, "comma separated module list");
    gaud->add_option("--points", cfg.points, "comma separated evaluation points");
    gaud->add_option("--lambda", cfg.lambda, "comma separated λ-shift");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        validate(cfg);
        const auto sd = cfg.sd();
        if (verify->parsed()) {
            bool pass = false;
            json rep = {{"schema", 1}, {"command", "verify"}, {"suite", suite}, {"config", config_json(cfg)}};
            rep["reports"] = run_suites(suites_for(suite, cfg), cfg.jobs, &pass);
            rep["status"] = pass ? "pass" : "fail";
            emit(cfg, rep.dump(2) + "\n");
            return pass ? kExitPass : kExitFail;
        }
        if (dump->parsed()) {
            std::string text;
            if (object == "bos")
                text = series_str(bos_series(sd, cfg.deg)) + "\n";
            else if (object == "ferm")
                text = series_str(ferm_series(sd, cfg.deg)) + "\n";
            else if (object == "berezinian")
                text = series_str(berezinian_series(sd, cfg.deg)) + "\n";
            else if (object == "sugawara-family")
                text = family_lines(sd, parse_family(kind), cfg.kmax);
            else if (object == "hc-images")
                text = hc_lines(sd, parse_family(kind), cfg.kmax, cfg.R);
            else
                text = supercommutative_normal_form(poly_det(lambda_matrix(sd))).str() + "\n";
            emit(cfg, text);
            return kExitPass;
        }
        if (sug->parsed()) {
            auto rep = suite_sugawara(sd, cfg.kmax, parse_level(cfg));
            emit(cfg, rep.to_json().dump(2) + "\n");
            return rep.pass ? kExitPass : kExitFail;
        }
        auto rep = suite_gaudin(sd, split(cfg.modules), parse_list(cfg.points), cfg.kmax,
                                cfg.lambda.empty() ? std::vector<Rational>{} : parse_list(cfg.lambda));
        json j = rep.to_json();
        for (const auto& key : {"pairs_checked", "all_commute", "witnesses"}) j[key] = rep.details[key];
        emit(cfg, j.dump(2) + "\n");
        return rep.pass ? kExitPass : kExitFail;
    } catch (const Error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }
}
