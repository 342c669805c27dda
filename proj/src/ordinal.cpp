#include "skew/ordinal.hpp"

#include <algorithm>
#include <cctype>

#include "skew/error.hpp"

namespace skew {

namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw CapacityError("ordinal coefficient overflow");
  return r;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw CapacityError("ordinal coefficient overflow");
  return r;
}

}  // namespace

Ordinal::Ordinal(std::vector<OrdTerm> terms) : terms_(std::move(terms)) {
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].coeff == 0) throw InputError("zero coefficient in Cantor normal form");
    if (i > 0 && !(terms_[i].exponent < terms_[i - 1].exponent))
      throw InputError("exponents must strictly decrease");
  }
  if (depth() > kMaxDepth)
    throw CapacityError("ordinal nests exponents deeper than " + std::to_string(kMaxDepth));
}

Ordinal Ordinal::finite(std::uint64_t n) {
  Ordinal r;
  if (n) r.terms_.push_back({Ordinal{}, n});
  return r;
}

Ordinal Ordinal::omega() { return power(finite(1)); }

Ordinal Ordinal::power(const Ordinal& e, std::uint64_t c) {
  if (c == 0) return {};
  return Ordinal({OrdTerm{e, c}});
}

bool Ordinal::is_finite() const { return terms_.empty() || terms_[0].exponent.is_zero(); }

int Ordinal::depth() const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, 1 + t.exponent.depth());
  return d;
}

std::string Ordinal::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& t : terms_) {
    if (!out.empty()) out += " + ";
    if (t.exponent.is_zero()) {
      out += std::to_string(t.coeff);
      continue;
    }
    out += "w";
    if (t.exponent != finite(1)) {
      const std::string e = t.exponent.str();
      out += t.exponent.is_finite() ? "^" + e : "^(" + e + ")";
    }
    if (t.coeff != 1) out += "*" + std::to_string(t.coeff);
  }
  return out;
}

std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) {
  const auto n = std::min(a.terms_.size(), b.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = a.terms_[i].exponent <=> b.terms_[i].exponent; c != 0) return c;
    if (auto c = a.terms_[i].coeff <=> b.terms_[i].coeff; c != 0) return c;
  }
  return a.terms_.size() <=> b.terms_.size();
}

bool operator==(const Ordinal& a, const Ordinal& b) { return a.terms_ == b.terms_; }

std::strong_ordering ord_cmp(const Ordinal& a, const Ordinal& b) { return a <=> b; }

Ordinal ord_add(const Ordinal& a, const Ordinal& b) {
  if (b.is_zero()) return a;
  const auto& lead = b.terms().front();
  std::vector<OrdTerm> out;
  for (const auto& t : a.terms()) {
    if (t.exponent > lead.exponent) {
      out.push_back(t);
    } else {
      if (t.exponent == lead.exponent) {
        out.push_back({lead.exponent, checked_add(t.coeff, lead.coeff)});
        out.insert(out.end(), b.terms().begin() + 1, b.terms().end());
        return Ordinal(std::move(out));
      }
      break;
    }
  }
  out.insert(out.end(), b.terms().begin(), b.terms().end());
  return Ordinal(std::move(out));
}

Ordinal ord_mul(const Ordinal& a, const Ordinal& b) {
  if (a.is_zero() || b.is_zero()) return {};
  // a * (w^f1 d1 + w^f2 d2 + ...) = a*w^f1*d1 + a*w^f2*d2 + ...
  const auto& lead = a.terms().front();
  Ordinal acc;
  for (const auto& t : b.terms()) {
    Ordinal part;
    if (t.exponent.is_zero()) {
      std::vector<OrdTerm> terms = a.terms();
      terms.front().coeff = checked_mul(lead.coeff, t.coeff);
      part = Ordinal(std::move(terms));
    } else {
      part = Ordinal::power(ord_add(lead.exponent, t.exponent), t.coeff);
    }
    acc = ord_add(acc, part);
  }
  return acc;
}

Ordinal ord_sup(std::span<const Ordinal> set) {
  if (set.empty()) throw InputError("sup of an empty set of ordinals");
  return *std::max_element(set.begin(), set.end());
}

namespace {

class OrdinalParser {
 public:
  explicit OrdinalParser(std::string_view s) : s_(s) {}

  Ordinal parse() {
    Ordinal r = sum();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return r;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("ordinal '" + std::string(s_) + "' at column " + std::to_string(pos_ + 1) +
                     ": " + what);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool at_number() {
    skip();
    return pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]));
  }

  std::uint64_t number() {
    if (!at_number()) fail("expected a number");
    std::uint64_t v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
      v = checked_add(checked_mul(v, 10), static_cast<std::uint64_t>(s_[pos_++] - '0'));
    return v;
  }

  Ordinal sum() {
    Ordinal r = term();
    while (eat('+')) r = ord_add(r, term());
    return r;
  }

  Ordinal term() {
    if (at_number()) return Ordinal::finite(number());
    if (!eat('w')) fail("expected 'w' or a number");
    Ordinal e = Ordinal::finite(1);
    if (eat('^')) {
      if (eat('(')) {
        e = sum();
        if (!eat(')')) fail("expected ')'");
      } else if (at_number()) {
        e = Ordinal::finite(number());
      } else if (eat('w')) {
        e = Ordinal::omega();
      } else {
        fail("expected an exponent");
      }
    }
    std::uint64_t c = 1;
    if (eat('*')) c = number();
    return Ordinal::power(e, c);
  }
};

Witness ord_witness(std::initializer_list<const Ordinal*> xs, std::string note) {
  Witness w{{}, std::move(note)};
  for (const auto* x : xs) w.items.push_back(x->str());
  return w;
}

}  // namespace

Ordinal parse_ordinal(std::string_view text) { return OrdinalParser(text).parse(); }

Verdict check_ordinal_law(std::span<const Ordinal> window, OrdAddition addition, Law law) {
  auto add = [addition](const Ordinal& a, const Ordinal& b) {
    return addition == OrdAddition::max ? OrdinalMax::add(a, b) : ord_add(a, b);
  };
  const Ordinal zero;
  const Ordinal one = Ordinal::finite(1);
  auto triples = [&](auto&& pred, const char* note) -> Verdict {
    for (const auto& a : window)
      for (const auto& b : window)
        for (const auto& c : window)
          if (!pred(a, b, c)) return Verdict::fail(ord_witness({&a, &b, &c}, note));
    return Verdict::ok();
  };
  auto pairs = [&](auto&& pred, const char* note) -> Verdict {
    for (const auto& a : window)
      for (const auto& b : window)
        if (!pred(a, b)) return Verdict::fail(ord_witness({&a, &b}, note));
    return Verdict::ok();
  };
  switch (law) {
    case Law::assoc_add:
      return triples([&](auto& a, auto& b, auto& c) { return add(add(a, b), c) == add(a, add(b, c)); },
                     "(a+b)+c != a+(b+c)");
    case Law::assoc_mul:
      return triples(
          [](auto& a, auto& b, auto& c) { return ord_mul(ord_mul(a, b), c) == ord_mul(a, ord_mul(b, c)); },
          "(ab)c != a(bc)");
    case Law::comm_add:
      return pairs([&](auto& a, auto& b) { return add(a, b) == add(b, a); }, "a+b != b+a");
    case Law::comm_mul:
      return pairs([](auto& a, auto& b) { return ord_mul(a, b) == ord_mul(b, a); }, "ab != ba");
    case Law::left_dist:
      return triples(
          [&](auto& a, auto& b, auto& c) { return ord_mul(a, add(b, c)) == add(ord_mul(a, b), ord_mul(a, c)); },
          "a(b+c) != ab+ac");
    case Law::right_dist:
      return triples(
          [&](auto& a, auto& b, auto& c) { return ord_mul(add(b, c), a) == add(ord_mul(b, a), ord_mul(c, a)); },
          "(b+c)a != ba+ca");
    case Law::neutral:
      return pairs(
          [&](auto& a, auto&) {
            return add(zero, a) == a && add(a, zero) == a && ord_mul(one, a) == a &&
                   ord_mul(a, one) == a;
          },
          "0 or 1 is not neutral");
    case Law::absorb:
      return pairs([&](auto& a, auto&) { return ord_mul(a, zero) == zero && ord_mul(zero, a) == zero; },
                   "0 is not absorbing");
    case Law::quasi_solvable:
      throw PreconditionError("quasi-solvability is not checked on ordinal windows");
  }
  return Verdict::ok();
}

MaxReduct max_reduct(std::vector<Ordinal> window) {
  std::sort(window.begin(), window.end());
  window.erase(std::unique(window.begin(), window.end()), window.end());
  if (!std::binary_search(window.begin(), window.end(), Ordinal{}) ||
      !std::binary_search(window.begin(), window.end(), Ordinal::finite(1)))
    throw InputError("an ordinal window must contain 0 and 1");
  MaxReduct r{std::move(window), {}};
  for (const auto& a : r.elems)
    for (const auto& b : r.elems)
      if (!std::binary_search(r.elems.begin(), r.elems.end(), ord_mul(a, b)))
        r.escapes.emplace_back(a, b);
  return r;
}

FinStruct MaxReduct::to_struct() const {
  if (!closed())
    throw CapacityError("product " + escapes[0].first.str() + " * " + escapes[0].second.str() +
                        " leaves the window");
  std::vector<std::string> names;
  for (const auto& o : elems) names.push_back(o.str());
  auto idx = [this](const Ordinal& o) {
    return static_cast<Elem>(std::lower_bound(elems.begin(), elems.end(), o) - elems.begin());
  };
  const auto n = elems.size();
  FinStruct s;
  s.label = "ordinal-max";
  s.order = OrderRelation::chain(std::move(names));
  s.add = BinaryTable::from(n, [](Elem a, Elem b) { return std::max(a, b); });
  s.mul = BinaryTable::from(n, [&](Elem a, Elem b) { return idx(ord_mul(elems[a], elems[b])); });
  s.zero = idx(Ordinal{});
  s.one = idx(Ordinal::finite(1));
  s.flags = {Law::assoc_add, Law::assoc_mul, Law::comm_add, Law::left_dist, Law::right_dist};
  return s;
}

}  // namespace skew
