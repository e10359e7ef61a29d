#pragma once

// Catalogue glue: the algebraic description of each sequence, and one entry
// point that builds its automaton either from terms or from the relation.

#include <span>
#include <string>
#include <vector>

#include "seqinv/algebraic_kernel.hpp"
#include "seqinv/dfao.hpp"
#include "seqinv/sequences.hpp"

namespace seqinv {

/// Algebraic description of a catalogued sequence: which root of which
/// relation, and the rational expression in that root giving the series.
inline AlgebraicTarget algebraic_target(const SequenceId& id, std::size_t root_order = 256) {
  const Prime p(id.modulus());
  auto plain_root = [&](const BivariatePoly& rel, const TermBlock& t) {
    return AlgebraicTarget{rel, t.series(), {{}, {1}}, {1}};
  };
  switch (id.kind) {
    case SeqKind::C:
      // C = (X - S) / X with S the root of S^(p+1) - S^2 - S + X
      return AlgebraicTarget{equations::thue_inverse_shifted(p), s_series_newton(p, root_order),
                             {{0, 1}, {p - 1}}, {0, 1}};
    case SeqKind::S:
      return AlgebraicTarget{equations::thue_inverse_shifted(p), s_series_newton(p, root_order), {{}, {1}}, {1}};
    case SeqKind::Thue: return plain_root(equations::thue(p), thue_terms(p, root_order));
    case SeqKind::Rudin: return plain_root(equations::rudin(), rudin_terms(RudinVariant::Plain, root_order));
    case SeqKind::RudinZeroed:
      return plain_root(equations::rudin_zeroed(), rudin_terms(RudinVariant::Zeroed, root_order));
    case SeqKind::RudinShifted:
      return plain_root(equations::rudin_shifted(), rudin_terms(RudinVariant::Shifted, root_order));
    case SeqKind::U:
    case SeqKind::V: return plain_root(relation_for(id).poly, inverse_terms(id.kind, root_order));
    case SeqKind::W: break;
  }
  throw Error("no algebraic description catalogued for " + id.name());
}

enum class Route { Oracle, Algebraic };

inline const char* route_name(Route r) { return r == Route::Oracle ? "oracle" : "algebraic"; }

/// The minimal LSD-first machine of `id`, certified against `oracle`
/// (which must cover at least opts.verify_below terms to certify that far).
inline Dfao build_machine(const SequenceId& id, Route route, std::span<const u32> oracle,
                          const SynthesisOptions& opts = {}) {
  if (route == Route::Oracle) return synthesize(oracle, Prime(id.modulus()), opts);
  return synthesize_algebraic(algebraic_target(id), oracle, opts);
}

}  // namespace seqinv
