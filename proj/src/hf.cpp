#include "forcelab/hf.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "forcelab/error.hpp"

namespace forcelab {

struct HFSet::Node {
  std::vector<HFSet> elements;
  std::uint32_t rank = 0;
  std::size_t hash = 0;
};

HFSet::HFSet() {
  static const auto empty = std::make_shared<const Node>();
  node_ = empty;
}

HFSet HFSet::of(std::vector<HFSet> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  return from_sorted_unique(std::move(elements));
}

HFSet HFSet::from_sorted_unique(std::vector<HFSet> elements) {
  if (elements.empty()) return HFSet{};
  auto node = std::make_shared<Node>();
  std::size_t h = 0x9e3779b97f4a7c15ULL ^ elements.size();
  for (const auto& e : elements) {
    node->rank = std::max(node->rank, e.rank() + 1);
    h ^= e.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  node->hash = h;
  node->elements = std::move(elements);
  return HFSet{std::shared_ptr<const Node>(std::move(node))};
}

std::span<const HFSet> HFSet::elements() const { return node_->elements; }

bool HFSet::contains(const HFSet& x) const {
  auto els = elements();
  return std::binary_search(els.begin(), els.end(), x);
}

bool HFSet::is_subset_of(const HFSet& other) const {
  auto a = elements();
  auto b = other.elements();
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::uint32_t HFSet::rank() const { return node_->rank; }

std::size_t HFSet::hash() const { return node_->hash; }

std::strong_ordering operator<=>(const HFSet& a, const HFSet& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  // A set of smaller rank lies in an earlier stage, whose codes form an
  // initial segment.
  if (a.rank() != b.rank()) return a.rank() <=> b.rank();
  auto ea = a.elements();
  auto eb = b.elements();
  std::size_t i = ea.size();
  std::size_t j = eb.size();
  while (i > 0 && j > 0) {
    auto c = ea[i - 1] <=> eb[j - 1];
    if (c != std::strong_ordering::equal) return c;
    --i;
    --j;
  }
  return i <=> j;
}

namespace {

class BraceParser {
 public:
  explicit BraceParser(std::string_view text) : text_(text) {}

  HFSet parse() {
    HFSet result = parse_set();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input");
    return result;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("hf syntax error: " + what, pos_);
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size())
      fail(std::string("unexpected end of input, expected '") + c + "'");
    if (text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  HFSet parse_set() {
    expect('{');
    std::vector<HFSet> elements;
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '}') {
      ++pos_;
      return HFSet{};
    }
    for (;;) {
      elements.push_back(parse_set());
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == ',') {
        ++pos_;
        continue;
      }
      expect('}');
      break;
    }
    return HFSet::of(std::move(elements));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void render_into(const HFSet& x, std::string& out) {
  out.push_back('{');
  bool first = true;
  for (const auto& e : x.elements()) {
    if (!first) out.push_back(',');
    first = false;
    render_into(e, out);
  }
  out.push_back('}');
}

}  // namespace

HFSet hf_parse(std::string_view text) { return BraceParser(text).parse(); }

std::string hf_render(const HFSet& x) {
  std::string out;
  render_into(x, out);
  return out;
}

BigNat ackermann_code(const HFSet& x, const Limits& limits) {
  BigNat code = 0;
  for (const auto& e : x.elements()) {
    BigNat exponent = ackermann_code(e, limits);
    if (exponent >= limits.max_code_bits)
      throw BudgetExceeded("max_code_bits", limits.max_code_bits,
                           "ackermann code of " + hf_render(x).substr(0, 64));
    code |= BigNat(1) << static_cast<std::size_t>(exponent);
  }
  return code;
}

HFSet hf_from_code(const BigNat& code) {
  if (code < 0) throw DomainError("negative ackermann code");
  if (code == 0) return HFSet{};
  std::vector<HFSet> elements;
  std::size_t top = boost::multiprecision::msb(code);
  for (std::size_t i = 0; i <= top; ++i)
    if (boost::multiprecision::bit_test(code, i))
      elements.push_back(hf_from_code(BigNat(i)));
  return HFSet::from_sorted_unique(std::move(elements));
}

std::uint32_t rank(const HFSet& x) { return x.rank(); }

HFSet transitive_closure(const HFSet& x) {
  std::set<HFSet> seen;
  std::vector<HFSet> stack(x.elements().begin(), x.elements().end());
  while (!stack.empty()) {
    HFSet y = std::move(stack.back());
    stack.pop_back();
    if (!seen.insert(y).second) continue;
    for (const auto& z : y.elements()) stack.push_back(z);
  }
  return HFSet::from_sorted_unique({seen.begin(), seen.end()});
}

bool is_transitive(const HFSet& x) {
  for (const auto& y : x.elements())
    for (const auto& z : y.elements())
      if (!x.contains(z)) return false;
  return true;
}

std::vector<HFSet> v_level(std::size_t n, const Limits& limits) {
  std::vector<HFSet> level;
  for (std::size_t k = 0; k < n; ++k) {
    if (level.size() >= 63 ||
        (std::size_t{1} << level.size()) > limits.max_level_size)
      throw BudgetExceeded("max_level_size", limits.max_level_size,
                           "V_" + std::to_string(k + 1));
    const std::size_t count = std::size_t{1} << level.size();
    std::vector<HFSet> next;
    next.reserve(count);
    for (std::size_t mask = 0; mask < count; ++mask) {
      std::vector<HFSet> members;
      for (std::size_t i = 0; i < level.size(); ++i)
        if (mask >> i & 1) members.push_back(level[i]);
      next.push_back(HFSet::from_sorted_unique(std::move(members)));
    }
    std::sort(next.begin(), next.end());
    level = std::move(next);
  }
  return level;
}

HFSet hf_union(const HFSet& a, const HFSet& b) {
  std::vector<HFSet> out;
  std::set_union(a.elements().begin(), a.elements().end(),
                 b.elements().begin(), b.elements().end(),
                 std::back_inserter(out));
  return HFSet::from_sorted_unique(std::move(out));
}

HFSet singleton(const HFSet& x) { return HFSet::from_sorted_unique({x}); }

HFSet hf_nat(std::uint64_t n) {
  std::vector<HFSet> members;
  members.reserve(n);
  HFSet current;
  for (std::uint64_t i = 0; i < n; ++i) {
    members.push_back(current);
    current = HFSet::from_sorted_unique(members);
  }
  return current;
}

std::optional<std::uint64_t> as_nat(const HFSet& x) {
  auto els = x.elements();
  for (std::size_t i = 0; i < els.size(); ++i) {
    auto inner = as_nat(els[i]);
    if (!inner || *inner != i) return std::nullopt;
  }
  return els.size();
}

HFSet kuratowski_pair(const HFSet& a, const HFSet& b) {
  return HFSet::of({singleton(a), HFSet::of({a, b})});
}

std::optional<std::pair<HFSet, HFSet>> as_kuratowski_pair(const HFSet& x) {
  auto els = x.elements();
  if (els.size() == 1) {
    if (els[0].size() != 1) return std::nullopt;
    return std::pair{els[0].elements()[0], els[0].elements()[0]};
  }
  if (els.size() != 2) return std::nullopt;
  for (int s = 0; s < 2; ++s) {
    const HFSet& single = els[s];
    const HFSet& doubleton = els[1 - s];
    if (single.size() != 1 || doubleton.size() != 2) continue;
    const HFSet& a = single.elements()[0];
    if (!doubleton.contains(a)) continue;
    const HFSet& b = doubleton.elements()[0] == a ? doubleton.elements()[1]
                                                  : doubleton.elements()[0];
    return std::pair{a, b};
  }
  return std::nullopt;
}

}  // namespace forcelab
