#pragma once

// Primitive embeddings of a rank-2 positive definite even lattice into
// Lambda_2n, described by gluing tuples (V, W, gamma, t), and the extension
// of such a tuple from Lambda_2d to Lambda_2md.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "k3lat/discform.hpp"
#include "k3lat/intlat.hpp"
#include "k3lat/kernels.hpp"

namespace k3lat {

struct GluingData {
    Integer n;             // ambient is Lambda_2n
    FiniteSubgroup V;      // in A_source
    FiniteSubgroup W;      // in A_2n
    SubgroupIsometry gamma;
    Integer t;             // complement is <-2t>

    friend bool operator==(const GluingData& a, const GluingData& b)
    {
        return a.n == b.n && a.V == b.V && a.W == b.W && a.gamma == b.gamma && a.t == b.t;
    }
};

struct GlueValidity {
    bool valid = false;
    std::vector<std::string> failures;
    Integer quotient_order;
    // Generator of Gamma^perp / Gamma with q = 1/2t, in quotient coordinates.
    std::optional<Element> generator;
};

GlueValidity check_glue(const IntegralLattice& source, const GluingData& glue,
                        SignConvention sign = SignConvention::AsStated);

// Reads (V, W, gamma, t) off a primitive embedding into Lambda_2n.
GluingData embedding_to_glue(const SublatticeEmbedding& e);

struct ExtensionConstants {
    Integer N;  // m = 1 mod N
    Integer a;  // must be a QR mod m
    Integer b;  // must be a QR mod m
};

ExtensionConstants extension_constants(const GluingData& glue, const Integer& d);

struct Admissibility {
    bool admissible = false;
    std::vector<std::string> failures;
};

// m = 1 always passes (identity extension). Otherwise m must be prime,
// m = 1 mod N, gcd(m, 24) = 1, a and b QR mod m, gcd(m, y0) = 1.
Admissibility check_admissible(const IntegralLattice& source, const GluingData& glue,
                               const Integer& d, const Integer& m);

// (x0, y0) in Gamma^perp with y0 in [1, 2d] whose class generates
// Gamma^perp / Gamma and has q = 1/2t; first in lexicographic order.
struct PerpGenerator {
    Element x0;
    Integer y0;
};
PerpGenerator find_perp_generator(const IntegralLattice& source, const GluingData& glue);

struct ExtensionCertificate {
    Element x0;
    Integer y0;
    Integer lambda;
    Integer m;
    Integer new_t;
    // lambda * (x0, y0) in A_source + A_2md and its quotient class.
    Element new_generator;
    Rational new_generator_q;
};

struct Extension {
    GluingData glue;
    ExtensionCertificate certificate;
};

// Glue for Lambda_2md: W' = mW, gamma' = m gamma, t' = tm. Throws
// InadmissibleModulus when m fails the predicate.
Extension extend_glue(const IntegralLattice& source, const GluingData& glue, const Integer& d,
                      const Integer& m);

enum class RealizeStatus { Witness, CertificateOnly };

struct RealizeResult {
    RealizeStatus status = RealizeStatus::CertificateOnly;
    std::optional<SublatticeEmbedding> embedding;
    std::size_t candidates_examined = 0;
};

// Scans Lambda_2n for columns with the Gram of `source` whose glue equals
// `glue`, in the kernel's documented candidate order. `accept` can reject
// hits for caller-specific reasons; rejected hits still count as examined.
using EmbeddingFilter = std::function<bool(const SublatticeEmbedding&)>;

RealizeResult realize_embedding(const IntegralLattice& source, const Integer& n,
                                const GluingData& glue, const Integer& search_bound,
                                kernels::Exec exec = kernels::Exec::Parallel,
                                const EmbeddingFilter& accept = {});

// Every valid tuple for source into Lambda_2n.
std::vector<GluingData> enumerate_valid_glues(const IntegralLattice& source, const Integer& n,
                                              SignConvention sign = SignConvention::AsStated);

} // namespace k3lat
