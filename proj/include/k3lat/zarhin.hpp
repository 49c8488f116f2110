#pragma once

// The degree-r construction: a seed Lambda = <v, l> in Lambda_2d with
// v^2 = 2, extended to Lambda_2md = Z + ZH + Z omega, read as a Mukai vector
// v of a rank-one K3 and a class l whose image has q = l^2 and c1^4 = 3 q^2.

#include <optional>
#include <string>
#include <vector>

#include "k3lat/mukai.hpp"
#include "k3lat/nikulin.hpp"

namespace k3lat {

constexpr long kBrauerMultiplier = 324;          // 2^2 3^4
constexpr long kBrauerMultiplierSixfold = 3200;  // 2^7 5^2

struct Seed {
    Integer d;
    Integer lsq;
    IntegralLattice lattice;         // diag(2, lsq) in the basis (v, l)
    SublatticeEmbedding embedding;   // into Lambda_2d
    IntVector v, l;                  // l.v = 0
    std::optional<IntVector> w;      // v.w = 1; absent when v has divisibility > 1
    GluingData glue;
};

// lsq = 0 selects the default 2d. Scan hits with div(v) = 1 are preferred;
// otherwise the first primitive hit is returned without w.
Seed build_seed(const Integer& d, const Integer& lsq = 0, const Integer& search_bound = 32);

struct ZarhinConstants {
    Integer r;
    ExtensionConstants extension;
};

ZarhinConstants zarhin_constants(const Integer& d, const Integer& lsq = 0);

// (a, D, c) -> (c, D, a) when a = 0, then a global sign so that a > 0. Both
// maps are isometries of N(X).
struct RankNormalization {
    bool swap = false;
    bool negate = false;
    MukaiVector apply(const MukaiVector& v) const;
};

RankNormalization rank_normalization(const MukaiVector& v);
MukaiVector ensure_positive_rank(const MukaiVector& v);

MukaiVector brauer_multiplier(const MukaiVector& l, long multiplier = kBrauerMultiplier);

// Lambda_2md coordinates (x_e, x_f, x_g) as the Mukai vector (x_f, x_e H, -x_g)
// over NS = <2md>.
MukaiVector lambda_to_mukai(const IntVector& x);

struct NamedCheck {
    std::string name;
    bool pass = false;
};

struct ZarhinCertificate {
    Integer d, m, lsq;
    RealizeStatus status = RealizeStatus::CertificateOnly;
    Seed seed;
    Extension extension;
    ZarhinConstants constants;
    NeronSeveriData ns;  // <2md>
    std::optional<SublatticeEmbedding> embedding;
    std::optional<MukaiVector> v, l;
    RankNormalization normalization;
    Integer r;
    Integer q_L;
    std::vector<NamedCheck> checks;
};

ZarhinCertificate zarhin_construct(const Integer& d, const Integer& m, const Integer& lsq = 0,
                                   const Integer& search_bound = 8,
                                   kernels::Exec exec = kernels::Exec::Parallel);

// Recomputes every clause from the certificate's vectors alone.
std::vector<NamedCheck> verify_certificate(const ZarhinCertificate& c);

bool all_pass(const std::vector<NamedCheck>& checks);

} // namespace k3lat
