#include "forcelab/sources.hpp"

#include <charconv>

#include "forcelab/error.hpp"
#include "forcelab/io.hpp"

namespace forcelab {

namespace {

std::uint64_t parse_nat(std::string_view s) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
    throw DomainError("expected a natural number, got '" + std::string(s) + "'");
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? s.npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

std::vector<std::uint64_t> parse_nat_list(std::string_view text) {
  std::vector<std::uint64_t> out;
  if (text.empty()) return out;
  if (auto dots = text.find(".."); dots != std::string_view::npos) {
    auto lo = parse_nat(text.substr(0, dots));
    auto hi = parse_nat(text.substr(dots + 2));
    if (hi < lo) throw DomainError("empty range '" + std::string(text) + "'");
    if (hi - lo >= (1u << 20)) throw DomainError("range '" + std::string(text) + "' is too long");
    for (auto v = lo; v <= hi; ++v) out.push_back(v);
    return out;
  }
  for (auto part : split(text, ',')) out.push_back(parse_nat(part));
  return out;
}

NatSet parse_nat_set(std::string_view text) {
  if (text == "w" || text == "omega") return NatSet::omega();
  return NatSet::of(parse_nat_list(text));
}

const FinitePoset& PosetSource::require_finite() const {
  if (!finite) throw DomainError("poset '" + text + "' is infinite; give finite parameters");
  return *finite;
}

LazyPoset PosetSource::lazy() const {
  if (!kind) throw DomainError("poset '" + text + "' is not a partial-function poset");
  return standard_lazy_poset(*kind, params);
}

PosetSource parse_poset_source(const std::string& text, const Limits& limits) {
  PosetSource src;
  src.text = text;
  auto colon = text.find(':');
  std::string head = text.substr(0, colon);
  std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
  auto standard = [&](StandardKind kind) {
    src.kind = kind;
    auto made = make_standard_poset(kind, src.params, limits);
    if (auto* f = std::get_if<FinitePoset>(&made)) src.finite = std::move(*f);
  };
  if (head == "cohen") {
    auto parts = split(rest, ':');
    if (rest.empty() || parts.size() > 2)
      throw DomainError("cohen poset syntax: cohen:<values>[:<domain bound>]");
    src.params.value_count = parse_nat(parts[0]);
    if (parts.size() == 2) src.params.domain_bound = parse_nat(parts[1]);
    standard(StandardKind::Cohen);
  } else if (head == "fin_partial" || head == "fin_inj") {
    auto parts = split(rest, ':');
    if (parts.size() != 2)
      throw DomainError(head + " poset syntax: " + head + ":<domain>:<range>");
    src.params.domain = parse_nat_set(parts[0]);
    src.params.range = parse_nat_set(parts[1]);
    standard(head == "fin_inj" ? StandardKind::FinInj : StandardKind::FinPartial);
  } else if (head == "witness") {
    src.params.witness_set = hf_parse(rest);
    standard(StandardKind::CountabilityWitness);
  } else if (head == "chain" || head == "antichain" || head == "top") {
    auto n = parse_nat(rest);
    src.finite = head == "chain" ? chain_poset(n) : head == "antichain" ? antichain_poset(n)
                                                                        : top_with_atoms(n);
  } else {
    src.finite = poset_from_json(read_json_file(text));
  }
  if (src.finite && src.finite->size() > limits.max_poset_size)
    throw BudgetExceeded("max_poset_size", limits.max_poset_size, "poset '" + text + "'");
  return src;
}

std::vector<DenseSpec<PartialMap>> parse_dense_specs(const std::vector<std::string>& items,
                                                     const PosetSource& source) {
  LazyPoset poset = source.lazy();
  std::vector<DenseSpec<PartialMap>> out;
  for (const auto& item : items) {
    auto colon = item.find(':');
    std::string head = item.substr(0, colon);
    std::string rest = colon == std::string::npos ? "" : item.substr(colon + 1);
    RefinerParams params;
    RefinerKind kind;
    if (head == "domains") {
      kind = RefinerKind::Domains;
      params.values = parse_nat_list(rest);
    } else if (head == "ranges") {
      kind = RefinerKind::Ranges;
      params.values = parse_nat_list(rest);
    } else if (head == "totality") {
      kind = RefinerKind::Totality;
      params.set = rest.empty() ? source.params.witness_set : hf_parse(rest);
    } else {
      throw DomainError("unknown dense family '" + item +
                        "' (expected domains:, ranges: or totality)");
    }
    for (auto& spec : standard_refiners(poset, kind, params)) out.push_back(std::move(spec));
  }
  return out;
}

}  // namespace forcelab
