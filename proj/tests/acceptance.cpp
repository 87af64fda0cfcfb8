// One line per acceptance criterion; exit status 1 if any criterion fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "superalg/suites.hpp"

using namespace superalg;

namespace {

std::string dim_str(const SuperDim& sd) {
    return "(" + std::to_string(sd.m) + "|" + std::to_string(sd.n) + ")";
}

std::vector<SuperDim> dims_up_to(int total) {
    std::vector<SuperDim> out;
    for (int s = 1; s <= total; ++s)
        for (int m = s; m >= 0; --m) out.push_back({m, s - m});
    return out;
}

struct Outcome {
    bool pass = true;
    std::string note;

    void take(const SuperDim& sd, const CheckReport& rep) {
        if (rep.pass) return;
        if (pass)
            note = dim_str(sd) + " " + rep.identity + ": " + rep.counterexample;
        else
            note += "; also " + dim_str(sd) + " " + rep.identity;
        pass = false;
    }
};

// True when every part with the given identity passed.
bool parts_pass(const CheckReport& rep, const std::string& identity, std::string* why) {
    for (const auto& p : rep.details["parts"])
        if (p["identity"] == identity && p["status"] != "pass") {
            *why = p["counterexample"].get<std::string>();
            return false;
        }
    return true;
}

}  // namespace

int main() {
    int failures = 0;
    auto run = [&](int id, const std::function<Outcome()>& body) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = body();
        } catch (const std::exception& e) {
            out.pass = false;
            out.note = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (!out.pass) ++failures;
        std::printf("criterion %d: %s%s%s\n", id, out.pass ? "PASS" : "FAIL",
                    out.note.empty() ? "" : " ", out.note.c_str());
        std::fprintf(stderr, "  [%d took %.1fs]\n", id, secs);
        std::fflush(stdout);
    };

    const std::vector<SuperDim> mmm_dims{{1, 0}, {0, 1}, {1, 1}, {2, 1}, {1, 2}, {2, 2}};
    run(1, [&] {
        Outcome o;
        for (const auto& sd : mmm_dims) o.take(sd, suite_mmm(sd, 4));
        return o;
    });
    run(2, [&] {
        Outcome o;
        for (const auto& sd : dims_up_to(3)) o.take(sd, suite_expansions(sd, 3));
        return o;
    });

    std::vector<std::pair<SuperDim, CheckReport>> ber;
    for (const auto& sd : dims_up_to(3))
        ber.emplace_back(sd, suite_berezinian(sd, sd.size() <= 2 ? 4 : 3, 3));
    run(3, [&] {
        Outcome o;
        for (const auto& [sd, rep] : ber) {
            CheckReport r;
            r.identity = "ber-expansions";
            std::string why;
            if (!parts_pass(rep, "ber-expansions", &why)) r.fail(why);
            o.take(sd, r);
        }
        return o;
    });
    run(4, [&] {
        Outcome o;
        for (const auto& [sd, rep] : ber) {
            CheckReport r;
            r.identity = "ber-factorization";
            std::string why;
            if (!parts_pass(rep, "ber-factorization", &why)) r.fail(why);
            o.take(sd, r);
        }
        return o;
    });
    run(5, [&] {
        Outcome o;
        for (const auto& sd : dims_up_to(4)) o.take(sd, suite_manin_T(sd));
        return o;
    });
    run(6, [&] {
        Outcome o;
        for (const auto& sd : dims_up_to(3)) {
            const int kmax = sd.size() <= 2 ? 4 : 3;
            o.take(sd, suite_sugawara(sd, kmax, Rational(sd.n - sd.m)));
            o.take(sd, suite_off_critical(sd));
        }
        return o;
    });
    run(7, [&] {
        Outcome o;
        for (const auto& sd : dims_up_to(3)) o.take(sd, suite_commutativity(sd, sd.size() <= 2 ? 4 : 3));
        return o;
    });
    run(8, [&] {
        Outcome o;
        for (const auto& sd : dims_up_to(3)) o.take(sd, suite_singular(sd, 3, 3));
        return o;
    });
    run(9, [&] {
        Outcome o;
        for (const auto& sd : std::vector<SuperDim>{{1, 0}, {0, 1}, {2, 0}, {1, 1}, {2, 1}, {1, 2}, {2, 2}})
            o.take(sd, suite_det_lambda(sd));
        return o;
    });
    run(10, [&] {
        Outcome o;
        for (const auto& sd : dims_up_to(3)) o.take(sd, suite_generators(sd, default_generic_weight(sd), 3));
        return o;
    });
    run(11, [&] {
        Outcome o;
        for (const auto& sd : dims_up_to(3)) o.take(sd, suite_newton(sd, 3, 3));
        return o;
    });
    run(12, [&] {
        Outcome o;
        for (const auto& sd : std::vector<SuperDim>{{1, 1}, {2, 1}, {2, 0}}) {
            std::vector<std::vector<Rational>> point_sets{{Rational(0), Rational(1)}};
            if (sd.n > 0) point_sets.push_back({Rational(0), Rational(1), Rational(-2, 3)});
            for (const auto& pts : point_sets) {
                std::vector<std::string> mods(pts.size(), "natural");
                o.take(sd, suite_gaudin(sd, mods, pts, 3, {}));
                o.take(sd, suite_gaudin(sd, mods, pts, 3, default_generic_weight(sd)));
            }
        }
        return o;
    });
    return failures == 0 ? 0 : 1;
}
