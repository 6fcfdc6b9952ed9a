#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "forcelab/generic.hpp"
#include "forcelab/lazy_poset.hpp"
#include "forcelab/limits.hpp"
#include "forcelab/poset.hpp"

namespace forcelab {

// "w" for ω, "a..b" (inclusive) or "a,b,c".
NatSet parse_nat_set(std::string_view text);
std::vector<std::uint64_t> parse_nat_list(std::string_view text);

// A poset named on the command line:
//   cohen:<values>[:<domain bound>]
//   fin_partial:<domain>:<range>    fin_inj:<domain>:<range>
//   witness:<hf set>
//   chain:<n>  antichain:<n>  top:<atoms>
//   <path to poset JSON>
struct PosetSource {
  std::string text;
  std::optional<StandardKind> kind;
  StandardParams params;
  std::optional<FinitePoset> finite;

  bool is_finite() const { return finite.has_value(); }
  // Throws DomainError for infinite posets.
  const FinitePoset& require_finite() const;
  // Throws DomainError when the poset is not a standard partial-map poset.
  LazyPoset lazy() const;
};
PosetSource parse_poset_source(const std::string& text, const Limits& limits = {});

// domains:<nat list>, ranges:<nat list>, totality[:<hf set>]. A bare
// "totality" uses the witness set of the poset.
std::vector<DenseSpec<PartialMap>> parse_dense_specs(const std::vector<std::string>& items,
                                                     const PosetSource& source);

}  // namespace forcelab
