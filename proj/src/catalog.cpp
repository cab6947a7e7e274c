#include <algorithm>
#include <string>

#include "projlab/canonical.hpp"

namespace projlab::canonical {

namespace {

const std::vector<std::string> kNames = {"const_demoulin", "liouville_demoulin", "coincidence_minimal",
                                         "nonminimal_linear"};

}  // namespace

std::vector<std::string> catalog_names() { return kNames; }

SurfaceData catalog(const std::string& name, const CatalogParams& params) {
  SurfaceData sd;
  sd.name = name;
  if (name == "const_demoulin") {
    sd.domain = {0.0, 1.0, 0.0, 1.0};
    sd.b = CoeffField(expr::constant(params.b0));
    sd.p = CoeffField(expr::constant(0.0));
  } else if (name == "liouville_demoulin") {
    // b = 1/(1 - |z|^2) solves (log b)_{z zb} = |b|^2, so k = 0; p cancels
    // the b-terms of P.
    sd.domain = {-0.55, 0.55, -0.55, 0.55};
    sd.b = CoeffField(expr::parse("1/(1 - z*zb)"));
    sd.p = CoeffField(expr::parse("(3*zb^2 - 2*z)/(4*(1 - z*zb)^2)"));
  } else if (name == "coincidence_minimal") {
    sd.domain = {-0.5, 0.5, -0.5, 0.5};
    sd.b = CoeffField(expr::constant(params.b0));
    sd.p = CoeffField(expr::constant(params.p0));
  } else if (name == "nonminimal_linear") {
    sd.domain = {-0.5, 0.5, -0.5, 0.5};
    sd.b = CoeffField(expr::constant(1.0));
    sd.p = CoeffField(expr::add(expr::mul(expr::constant(params.c), expr::var_z()), expr::constant(params.d)));
  } else {
    throw UnknownCatalogEntry("unknown catalog entry '" + name + "'");
  }
  return sd;
}

}  // namespace projlab::canonical
