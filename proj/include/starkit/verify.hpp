#pragma once

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace starkit {

struct VerifyOptions {
    // negate the sign-carrying side (theta, R_n, the unit side) as a negative control
    bool flip_sign = false;
    // record wall-clock time; off by default so reports are byte-identical across runs
    bool timing = false;
};

struct VerificationReport {
    std::string verifier;
    nlohmann::json instance;
    std::string statement;
    nlohmann::json lhs, rhs;
    std::string quotient;
    bool pass = false;
    nlohmann::json checks = nlohmann::json::object();   // named sub-verdicts
    nlohmann::json conventions = nlohmann::json::object();
    nlohmann::json orientation;                          // null unless a unit basis was oriented
    std::optional<double> elapsed_ms;

    nlohmann::json to_json() const;
};

// theta_{K/Q,S,T}(0) Cl^T(K) = 0 and theta in Fitt^0(Cl^T(K)), K = Q(sqrt d) imaginary, S = {inf} + ramified
VerificationReport verify_brumer_stark(long d, const std::vector<long>& T, const VerifyOptions& opt = {});
// theta in Fitt^0(Cl^T_{v}(K)); v = 0 is the infinite place, otherwise a ramified prime
VerificationReport verify_fitt0_cyclic(long d, const std::vector<long>& T, long v, const VerifyOptions& opt = {});
// N_H(beta_n) = -2^{nu_-} h_n R_n; modulus 0 means |H|
VerificationReport verify_darmon(long f, long n, long modulus = 0, const VerifyOptions& opt = {});
// chi(theta_{K/Q,S,T}(0)) = 2^{|S|-1-r'} (h_{L,S,T}/h_{Q,S,T}) R_{S,T} in (J_W)_H, K = L L~
VerificationReport verify_gross_tori(long dL, long dLt, const std::vector<long>& T, const VerifyOptions& opt = {});
// the Rubin-Stark element over Q(mu_m)^+ recovered from L'-values equals (1 - zeta_m)^{delta_T}
VerificationReport verify_rse_cyclotomic(long m, const std::vector<long>& T, int precision = 9,
                                         const VerifyOptions& opt = {});

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

const std::vector<std::string>& verifier_names();
// params as in the config format; throws ConfigError on unknown names or malformed params
VerificationReport run_verifier(const std::string& name, const nlohmann::json& params, const VerifyOptions& opt = {});

struct RunSummary {
    std::vector<VerificationReport> reports;
    bool all_pass() const;
    nlohmann::json to_json() const;
};

// config: a JSON list of {"verifier": name, "params": {...}}; params may carry "flip_sign": true
RunSummary run_config_text(const std::string& text, const VerifyOptions& opt = {}, const std::string& origin = "<config>");
RunSummary run_config(const std::string& path, const VerifyOptions& opt = {});

} // namespace starkit
