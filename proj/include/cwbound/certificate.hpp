#pragma once

// Self-contained JSON certificates for bound results. A certificate carries
// every LP with its rows, provenance and exact primal/dual vectors, so it can
// be re-checked without the T table or the constraint generators.

#include "cwbound/engine.hpp"
#include "cwbound/simplex.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cwbound {

inline constexpr int kCertificateFormat = 1;

/// Raised for unreadable or structurally malformed certificate text.
class CertificateParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CertifiedLP {
  std::string role;
  std::string instance;
  std::optional<std::int64_t> assumed_size;
  LPProblem problem;
  LPSolution solution;
};

struct Certificate {
  std::string query;
  std::optional<CodeParams> params;
  std::string method;
  Integer claimed_bound;
  /// Upper bound taken on trust (Johnson, known bound, closed form).
  std::optional<Integer> assumed_bound;
  std::string assumed_source;
  std::vector<CertifiedLP> lps;
  std::string digest;  // lowercase hex SHA-256 of the canonical body
};

Certificate make_certificate(const BoundResult& result);

/// Pretty-printed JSON including the digest.
std::string serialize_certificate(const Certificate& cert);

/// Throws CertificateParseError on malformed JSON or missing fields.
Certificate parse_certificate(const std::string& text);

struct VerifyReport {
  bool ok = false;
  std::string message;  // first violated condition, or a summary when ok
};

/// Checks each LP certificate, that the LPs plus the assumed bound justify
/// the claimed bound, and finally the digest.
VerifyReport verify_certificate(const Certificate& cert);

/// Parses then verifies; parse failures propagate as CertificateParseError.
VerifyReport verify_certificate_text(const std::string& text);

}  // namespace cwbound
