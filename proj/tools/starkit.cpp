#include "starkit/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

int emit(const nlohmann::json& j, const std::string& out, bool ok)
{
    std::string text = j.dump(2) + "\n";
    if (out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(out);
        if (!f) {
            std::cerr << "error: cannot write " << out << "\n";
            return 1;
        }
        f << text;
    }
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"starkit: exact verification of Stark-type identities over Q"};
    app.require_subcommand(1);
    starkit::VerifyOptions opt;
    std::string out;

    auto* verify = app.add_subcommand("verify", "run one verifier");
    std::string name;
    std::optional<long> d, f, n, modulus, dL, dLt, m;
    std::optional<int> precision;
    std::vector<long> T;
    std::string v;
    verify->add_option("name", name, "verifier")->required()->check(CLI::IsMember(starkit::verifier_names()));
    verify->add_option("--d", d, "fundamental discriminant (brumer_stark, fitt0_cyclic)");
    verify->add_option("--T", T, "primes of T")->delimiter(',');
    verify->add_option("--v", v, "place of S: inf or a ramified prime (fitt0_cyclic)");
    verify->add_option("--f", f, "conductor of L (darmon)");
    verify->add_option("--n", n, "prime n (darmon)");
    verify->add_option("--modulus", modulus, "power-residue modulus (darmon)");
    verify->add_option("--dL", dL, "discriminant of L (gross_tori)");
    verify->add_option("--dLt", dLt, "discriminant of L~ (gross_tori)");
    verify->add_option("--m", m, "conductor (rse_cyclotomic)");
    verify->add_option("--precision", precision, "decimal digits (rse_cyclotomic)");

    auto* run = app.add_subcommand("run", "run every verification listed in a config");
    std::string config;
    run->add_option("config", config, "JSON list of {verifier, params}")->required();

    app.add_subcommand("list", "list verifier names");

    for (auto* sc : {verify, run}) {
        sc->add_flag("--flip-sign", opt.flip_sign, "negative control: negate the sign-carrying side");
        sc->add_flag("--timing", opt.timing, "record elapsed_ms in each report");
        sc->add_option("-o,--output", out, "write the JSON report to a file");
    }

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("list")) {
            for (auto& s : starkit::verifier_names()) std::cout << s << "\n";
            return 0;
        }
        if (app.got_subcommand("run")) {
            starkit::RunSummary s = starkit::run_config(config, opt);
            return emit(s.to_json(), out, s.all_pass());
        }
        nlohmann::json p = nlohmann::json::object();
        auto put = [&](const char* key, const auto& x) {
            if (x) p[key] = *x;
        };
        put("d", d);
        put("f", f);
        put("n", n);
        put("modulus", modulus);
        put("d_L", dL);
        put("d_Lt", dLt);
        put("m", m);
        put("precision", precision);
        if (!T.empty()) p["T"] = T;
        if (!v.empty()) {
            if (v == "inf") p["v"] = "inf";
            else p["v"] = std::stol(v);
        }
        starkit::VerificationReport r = starkit::run_verifier(name, p, opt);
        return emit(r.to_json(), out, r.pass);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
