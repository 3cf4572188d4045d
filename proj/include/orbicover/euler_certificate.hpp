#pragma once

#include "orbicover/cover_moduli.hpp"
#include "orbicover/level_strata.hpp"

#include <map>
#include <shared_mutex>
#include <string>
#include <variant>
#include <vector>

namespace orbicover {

/// A factor whose Fredholm index is not 1, so the stratum carries no zero-dimensional piece.
/// `factor` is "level L" or "vertex v" in the stratum's own vertex numbering.
struct DimMismatch {
    std::string factor;
    long index = 0;
    bool operator==(const DimMismatch&) const = default;
};

/// The stratum reduces to a single noncylindrical component whose certificate is `profile`.
struct Induction {
    int vertex = 0;
    std::string profile;
    bool operator==(const Induction&) const = default;
};

struct BoundaryCase {
    std::string stratum;           // canonical form
    std::vector<long> level_indices;  // Fredholm index of level 1, level 2
    std::variant<DimMismatch, Induction> disposition;
    bool operator==(const BoundaryCase&) const = default;
};

struct EulerCertificate {
    std::string profile;
    int punctures = 0;
    long fredholm_index = 0;
    long kernel_dimension = 0;
    long rank = 0;
    bool parity_odd = false;
    std::vector<BoundaryCase> boundary;
    long conclusion = 0;
    bool operator==(const EulerCertificate&) const = default;
};

/// A certificate together with every certificate it cites, keyed by profile text.
struct CertificateBundle {
    std::size_t orbit = 0;
    std::string root;
    std::map<std::string, EulerCertificate> certificates;
    bool operator==(const CertificateBundle&) const = default;
};

struct EulerResult {
    long value = 0;
    CertificateBundle bundle;
};

/// Memoizing certificate generator for one catalog. Safe to call from several threads.
class CertificateStore {
  public:
    explicit CertificateStore(const OrbitCatalog& catalog) : catalog_(catalog) {}

    const EulerCertificate& certify(const MultiplicityProfile& profile);
    EulerResult euler_number(const MultiplicityProfile& profile);
    std::size_t size() const;

  private:
    const OrbitCatalog& catalog_;
    mutable std::shared_mutex mutex_;
    std::map<std::pair<std::size_t, std::string>, EulerCertificate> memo_;
};

EulerResult euler_number(const MultiplicityProfile& profile, const OrbitCatalog& catalog);

/// Signed count of the zero-dimensional part of the moduli space; always 0 for orbit curves.
Rational contribution(const MultiplicityProfile& profile, const OrbitCatalog& catalog);

struct CertificateCheck {
    bool ok = true;
    std::string node;
    std::string reason;
};

CertificateCheck verify_certificate(const CertificateBundle& bundle, const OrbitCatalog& catalog);

std::string certificate_to_json(const CertificateBundle& bundle, int indent = 2);
CertificateBundle certificate_from_json(std::string_view text);

}  // namespace orbicover
