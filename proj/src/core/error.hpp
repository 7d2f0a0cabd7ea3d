#pragma once

#include <stdexcept>
#include <string>

namespace bfp {

enum class Errc {
  ok = 0,
  invalid_spec,
  parse_error,
  same_sign_cross,
  ambiguous_endpoints,
  model_violation,
  model_incomplete,
  budget_too_large,
  budget_mismatch,
  no_tree,
  no_witness,
  grid_inconsistent,
  inconsistent_family,
  all_elliptic,
  spectra_differ,
  noncorner_mismatch,
  not_boundary_conjugate,
  lemma_violation,
  io_error,
  internal,
};

const char* errc_name(Errc c);

struct Error : std::runtime_error {
  Errc code;
  Error(Errc c, const std::string& msg)
      : std::runtime_error(std::string(errc_name(c)) + ": " + msg), code(c) {}
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::ok: return "ok";
    case Errc::invalid_spec: return "invalid-spec";
    case Errc::parse_error: return "parse-error";
    case Errc::same_sign_cross: return "same-sign-cross";
    case Errc::ambiguous_endpoints: return "ambiguous-endpoints";
    case Errc::model_violation: return "model-violation";
    case Errc::model_incomplete: return "model-incomplete";
    case Errc::budget_too_large: return "budget-too-large";
    case Errc::budget_mismatch: return "budget-mismatch";
    case Errc::no_tree: return "no-tree";
    case Errc::no_witness: return "no-witness";
    case Errc::grid_inconsistent: return "grid-inconsistent";
    case Errc::inconsistent_family: return "inconsistent-family";
    case Errc::all_elliptic: return "all-elliptic";
    case Errc::spectra_differ: return "spectra-differ";
    case Errc::noncorner_mismatch: return "noncorner-mismatch";
    case Errc::not_boundary_conjugate: return "not-boundary-conjugate";
    case Errc::lemma_violation: return "lemma-violation";
    case Errc::io_error: return "io-error";
    default: return "internal";
  }
}

}  // namespace bfp
