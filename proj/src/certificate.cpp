#include "cwbound/certificate.hpp"

#include <json.hpp>
#include <openssl/evp.h>

#include <cstdio>

namespace cwbound {

using nlohmann::json;

namespace {

std::string fraction(const Rational& r) { return r.get_num().get_str() + "/" + r.get_den().get_str(); }

json vector_json(const RationalVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(fraction(v(i)));
  return out;
}

RationalVector parse_vector(const json& j) {
  RationalVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = parse_rational(j.at(i).get<std::string>());
  return v;
}

json lp_json(const CertifiedLP& lp) {
  const LPProblem& p = lp.problem;
  json rows = json::array();
  for (Eigen::Index r = 0; r < p.constraint_count(); ++r) {
    rows.push_back({{"coefficients", vector_json(p.coefficients.row(r).transpose())},
                    {"sense", to_string(p.senses[r])},
                    {"rhs", fraction(p.rhs(r))},
                    {"provenance", p.provenance[r]}});
  }
  json out = {{"role", lp.role},
              {"instance", lp.instance},
              {"assumed_size", lp.assumed_size ? json(*lp.assumed_size) : json(nullptr)},
              {"variables", p.variables},
              {"objective", vector_json(p.objective)},
              {"constraints", rows},
              {"status", to_string(lp.solution.status)},
              {"pivots", lp.solution.pivots}};
  if (lp.solution.status == LPStatus::Optimal) out["optimum"] = fraction(lp.solution.optimum);
  out["primal"] = vector_json(lp.solution.primal);
  out["dual"] = vector_json(lp.solution.dual);
  out["ray"] = vector_json(lp.solution.ray);
  return out;
}

CertifiedLP parse_lp(const json& j) {
  CertifiedLP lp;
  lp.role = j.at("role").get<std::string>();
  lp.instance = j.at("instance").get<std::string>();
  if (!j.at("assumed_size").is_null()) lp.assumed_size = j.at("assumed_size").get<std::int64_t>();

  LPProblem& p = lp.problem;
  p.variables = j.at("variables").get<std::vector<std::string>>();
  p.objective = parse_vector(j.at("objective"));
  const json& rows = j.at("constraints");
  const auto cols = static_cast<Eigen::Index>(p.variables.size());
  p.coefficients = RationalMatrix::Zero(static_cast<Eigen::Index>(rows.size()), cols);
  p.rhs = RationalVector::Zero(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const json& row = rows.at(r);
    const RationalVector coef = parse_vector(row.at("coefficients"));
    if (coef.size() != cols) {
      throw CertificateParseError("constraint " + std::to_string(r) + " has " + std::to_string(coef.size()) +
                                  " coefficients for " + std::to_string(cols) + " variables");
    }
    const auto ri = static_cast<Eigen::Index>(r);
    p.coefficients.row(ri) = coef.transpose();
    p.senses.push_back(parse_sense(row.at("sense").get<std::string>()));
    p.rhs(ri) = parse_rational(row.at("rhs").get<std::string>());
    p.provenance.push_back(row.at("provenance").get<std::string>());
  }

  LPSolution& s = lp.solution;
  s.status = parse_status(j.at("status").get<std::string>());
  s.pivots = j.at("pivots").get<std::size_t>();
  if (s.status == LPStatus::Optimal) s.optimum = parse_rational(j.at("optimum").get<std::string>());
  s.primal = parse_vector(j.at("primal"));
  s.dual = parse_vector(j.at("dual"));
  s.ray = parse_vector(j.at("ray"));
  return lp;
}

json body_json(const Certificate& c) {
  json params = nullptr;
  if (c.params) params = {{"n", c.params->n}, {"d", c.params->d}, {"w", c.params->w}};
  json lps = json::array();
  for (const auto& lp : c.lps) lps.push_back(lp_json(lp));
  return {{"format", kCertificateFormat},
          {"query", c.query},
          {"params", params},
          {"method", c.method},
          {"claimed_bound", c.claimed_bound.get_str()},
          {"assumed_upper_bound", c.assumed_bound ? json(c.assumed_bound->get_str()) : json(nullptr)},
          {"assumed_source", c.assumed_source},
          {"lps", lps}};
}

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

std::string body_digest(const Certificate& c) { return sha256_hex(body_json(c).dump()); }

}  // namespace

Certificate make_certificate(const BoundResult& result) {
  Certificate c;
  c.query = result.query;
  c.params = result.params;
  if (c.params) c.params->size.reset();
  c.method = result.method;
  c.claimed_bound = result.bound;
  c.assumed_bound = result.assumed_bound;
  c.assumed_source = result.assumed_source;
  if (!c.assumed_bound && result.lps.empty()) {
    c.assumed_bound = result.bound;
    c.assumed_source = result.method;
  }
  for (const auto& rec : result.lps) {
    c.lps.push_back(CertifiedLP{rec.role, rec.instance, rec.assumed_size, rec.problem, rec.solution});
  }
  c.digest = body_digest(c);
  return c;
}

std::string serialize_certificate(const Certificate& cert) {
  json j = body_json(cert);
  j["digest"] = cert.digest;
  return j.dump(1) + "\n";
}

Certificate parse_certificate(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw CertificateParseError(std::string("certificate is not valid JSON: ") + e.what());
  }
  try {
    if (!j.is_object()) throw CertificateParseError("certificate must be a JSON object");
    if (j.at("format").get<int>() != kCertificateFormat) {
      throw CertificateParseError("unsupported certificate format " + j.at("format").dump());
    }
    Certificate c;
    c.query = j.at("query").get<std::string>();
    if (!j.at("params").is_null()) {
      const json& p = j.at("params");
      c.params = CodeParams{p.at("n").get<int>(), p.at("d").get<int>(), p.at("w").get<int>(), std::nullopt};
    }
    c.method = j.at("method").get<std::string>();
    c.claimed_bound = parse_integer(j.at("claimed_bound").get<std::string>());
    if (!j.at("assumed_upper_bound").is_null()) {
      c.assumed_bound = parse_integer(j.at("assumed_upper_bound").get<std::string>());
    }
    c.assumed_source = j.at("assumed_source").get<std::string>();
    for (const auto& lp : j.at("lps")) c.lps.push_back(parse_lp(lp));
    c.digest = j.at("digest").get<std::string>();
    if (j.size() != 9) throw CertificateParseError("certificate has unexpected top-level fields");
    return c;
  } catch (const json::exception& e) {
    throw CertificateParseError(std::string("malformed certificate: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw CertificateParseError(std::string("malformed certificate: ") + e.what());
  }
}

VerifyReport verify_certificate(const Certificate& cert) {
  std::optional<Integer> upper = cert.assumed_bound;
  bool descent_proof = false;
  for (std::size_t i = 0; i < cert.lps.size(); ++i) {
    const auto& lp = cert.lps[i];
    const std::string where = "lp " + std::to_string(i) + " (" + lp.role + ", " + lp.instance + "): ";
    if (auto v = certificate_violation(lp.problem, lp.solution)) return {false, where + *v};
    const auto& s = lp.solution;
    if (!lp.assumed_size) {
      if (s.status == LPStatus::Optimal) {
        const Integer implied = floor(s.optimum) + 1;
        if (!upper || implied < *upper) upper = implied;
      }
      continue;
    }
    const bool rules_out = s.status == LPStatus::Infeasible ||
                           (s.status == LPStatus::Optimal && floor(s.optimum) + 1 < *lp.assumed_size);
    // A code larger than the ruled-out size would contain one of that size.
    if (rules_out && Integer(*lp.assumed_size) <= cert.claimed_bound + 1) descent_proof = true;
  }
  if (cert.claimed_bound < 0) return {false, "bound: claimed bound is negative"};
  const bool covered = upper && cert.claimed_bound >= *upper;
  if (!covered && !descent_proof) {
    return {false, "bound: claimed bound " + cert.claimed_bound.get_str() + " is not justified (best certified " +
                       (upper ? upper->get_str() : std::string("none")) + ")"};
  }
  if (body_digest(cert) != cert.digest) return {false, "digest: certificate body does not match its digest"};
  return {true, "certificate valid: " + cert.query + " <= " + cert.claimed_bound.get_str() + " (" +
                    std::to_string(cert.lps.size()) + " LP certificates checked)"};
}

VerifyReport verify_certificate_text(const std::string& text) { return verify_certificate(parse_certificate(text)); }

}  // namespace cwbound
