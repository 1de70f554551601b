// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include "suites.hpp"

#include "starkit/cyclo.hpp"
#include "starkit/verify.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using namespace starkit;

namespace {

struct Outcome {
    bool ok = true;
    std::ostringstream note;
    void require(bool c, const std::string& what)
    {
        if (!c) {
            ok = false;
            note << " [" << what << "]";
        }
    }
    void suite(const suites::Result& r, const std::string& name)
    {
        note << " " << name << "=" << r.instances;
        require(r.ok(), name + ": " + r.detail);
    }
    void report(const VerificationReport& r)
    {
        require(r.pass, r.verifier + " " + r.instance.dump());
    }
};

using Clock = std::chrono::steady_clock;

struct Criterion {
    int id;
    std::string title;
    double limit_s;   // 0 = no runtime bound
    std::function<void(Outcome&)> body;
};

Rat theta_at(const StickelbergerElement& st, long a) { return st.theta.coeff(st.of(a)); }

VerifyOptions flip()
{
    VerifyOptions o;
    o.flip_sign = true;
    return o;
}

const std::vector<std::pair<long, std::vector<long>>> kQuadT = {
    {-4, {3}}, {-4, {5}}, {-23, {5}}, {-23, {3, 7}}, {-31, {3}}, {-31, {5}}, {-47, {3}}, {-47, {7}}};

} // namespace

int main()
{
    std::vector<Criterion> cs = {
        {1, "relative Fitting properties and the submodule-sum oracle", 60,
         [](Outcome& o) {
             o.suite(suites::fitting_properties(500, 1001), "properties");
             o.suite(suites::fitting_oracle(50, 1002), "oracle");
         }},
        {2, "transpose duality of Fitting ideals", 0,
         [](Outcome& o) { o.suite(suites::transpose_duality(200, 1003), "duality"); }},
        {3, "exterior-power identities", 0,
         [](Outcome& o) {
             o.suite(suites::exterior_formula(), "formula");
             o.suite(suites::exterior_phi(), "phi");
             o.suite(suites::exterior_nu(), "nu");
             o.suite(suites::exterior_norm_equivalence(), "norm");
         }},
        {4, "Stickelberger elements", 30,
         [](Outcome& o) {
             o.suite(suites::stickelberger_characters(24), "characters");
             o.suite(suites::stickelberger_integrality(40), "integrality");
             auto st = stickelberger(3, {}, {3}, {});
             auto st5 = stickelberger(3, {}, {3}, {5});
             o.require(theta_at(st, 1) == Rat(-1, 6) && theta_at(st, 2) == Rat(1, 6), "theta_Q(mu_3) = -1/6 + sigma_2/6");
             o.require(theta_at(st5, 1) == -1 && theta_at(st5, 2) == 1, "T = {5}: -1 + sigma_2");
         }},
        {5, "L(chi_d, 0) = 2h/w for -50 < d < 0", 0,
         [](Outcome& o) { o.suite(suites::class_number_l_values(-50), "discriminants"); }},
        {6, "Rubin-Stark recovery over Q(mu_m)^+", 60,
         [](Outcome& o) {
             o.suite(suites::rubin_stark_recovery({{5, {3}}, {7, {2}}, {8, {3}}, {11, {3}}, {12, {5}}}, 9), "fields");
             for (auto [m, T] : std::vector<std::pair<long, std::vector<long>>>{{5, {3}}, {7, {2}}, {8, {3}}, {11, {3}}, {12, {5}}})
                 o.report(verify_rse_cyclotomic(m, T, 9));
         }},
        {7, "Brumer-Stark and Fitt^0 for cyclic G", 0,
         [](Outcome& o) {
             for (auto& [d, T] : kQuadT) {
                 o.report(verify_brumer_stark(d, T));
                 o.report(verify_fitt0_cyclic(d, T, 0));
                 o.report(verify_fitt0_cyclic(d, T, -d % 4 == 0 ? 2 : -d));
             }
             o.note << " instances=" << kQuadT.size();
         }},
        {8, "refined Darmon identity", 600,
         [](Outcome& o) {
             for (auto [n, mod] : std::vector<std::pair<long, long>>{{11, 5}, {19, 9}, {7, 0}}) {
                 auto t0 = Clock::now();
                 o.report(verify_darmon(5, n, mod));
                 double s = std::chrono::duration<double>(Clock::now() - t0).count();
                 o.require(s < 600, "n = " + std::to_string(n) + " exceeds 10 min");
             }
         }},
        {9, "Gross's conjecture for tori", 0,
         [](Outcome& o) {
             o.report(verify_gross_tori(-3, -7, {5}));
             o.report(verify_gross_tori(-3, -4, {7}));
             auto e = verify_gross_tori(-15, -3, {7});
             o.report(e);
             o.require(std::stol(e.instance["h_L_S_T"].get<std::string>()) % 2 == 0, "h_{L,S,T} even");
         }},
        {10, "negative controls", 0,
         [](Outcome& o) {
             std::map<std::string, bool> caught;
             auto mark = [&](const VerificationReport& r) { caught[r.verifier] = caught[r.verifier] || !r.pass; };
             for (auto& [d, T] : kQuadT) {
                 mark(verify_brumer_stark(d, T, flip()));
                 mark(verify_fitt0_cyclic(d, T, 0, flip()));
             }
             for (auto [n, mod] : std::vector<std::pair<long, long>>{{11, 5}, {19, 9}, {7, 0}}) mark(verify_darmon(5, n, mod, flip()));
             mark(verify_gross_tori(-3, -4, {7}, flip()));
             mark(verify_gross_tori(-15, -3, {7}, flip()));
             mark(verify_rse_cyclotomic(5, {3}, 9, flip()));
             for (auto& name : verifier_names()) o.require(caught[name], name + " survives the sign flip");
             auto run = run_config_text(R"([{"verifier": "darmon", "params": {"f": 5, "n": 11, "flip_sign": true}}])");
             o.require(!run.all_pass(), "perturbed config exits 0");
         }},
    };

    int failures = 0;
    for (auto& c : cs) {
        Outcome o;
        auto t0 = Clock::now();
        try {
            c.body(o);
        } catch (const std::exception& e) {
            o.ok = false;
            o.note << " [exception: " << e.what() << "]";
        }
        double s = std::chrono::duration<double>(Clock::now() - t0).count();
        if (c.limit_s > 0 && s > c.limit_s) {
            o.ok = false;
            o.note << " [runtime over " << c.limit_s << " s]";
        }
        failures += !o.ok;
        std::printf("%s criterion %d: %s (%.2f s)%s\n", o.ok ? "PASS" : "FAIL", c.id, c.title.c_str(), s,
                    o.note.str().c_str());
    }
    std::fflush(stdout);
    return failures ? 1 : 0;
}
