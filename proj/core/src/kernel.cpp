#include "nbe/kernel.hpp"

#include <algorithm>
#include <ostream>

namespace nbe {

std::ostream& operator<<(std::ostream& os, Idx x) { return os << "#" << x.depth; }

Ope::Ope(std::vector<Step> spine)
    : spine_(std::move(spine)),
      source_size_(static_cast<std::size_t>(std::count(spine_.begin(), spine_.end(), Step::Lift))) {}

Ope Ope::id(std::size_t len) { return Ope(std::vector<Step>(len, Step::Lift)); }

Ope Ope::wk(std::size_t len) { return id(len).weak(); }

Ope Ope::lift() const {
  Ope out = *this;
  out.spine_.push_back(Step::Lift);
  ++out.source_size_;
  return out;
}

Ope Ope::weak() const {
  Ope out = *this;
  out.spine_.push_back(Step::Weak);
  return out;
}

Idx Ope::reindex(Idx x) const {
  std::uint32_t remaining = x.depth;
  std::uint32_t result = 0;
  for (auto it = spine_.rbegin(); it != spine_.rend(); ++it, ++result) {
    if (*it == Step::Lift) {
      if (remaining == 0) return Idx{result};
      --remaining;
    }
  }
  fail(Errc::IndexOutOfRange, "index " + std::to_string(x.depth) + " not in OPE source of length " +
                                  std::to_string(source_size_));
}

Ope compose(const Ope& first, const Ope& second) {
  if (first.target_size() != second.source_size()) {
    fail(Errc::ContextMismatch, "cannot compose " + to_string(first) + " with " + to_string(second));
  }
  const auto& s1 = first.spine();
  const auto& s2 = second.spine();
  std::vector<Step> out(s2.size());
  std::size_t i1 = s1.size();
  for (std::size_t i2 = s2.size(); i2-- > 0;) {
    out[i2] = s2[i2] == Step::Weak ? Step::Weak : s1[--i1];
  }
  return Ope(std::move(out));
}

std::string to_string(const Ope& tau) {
  std::string out;
  for (auto it = tau.spine().rbegin(); it != tau.spine().rend(); ++it) {
    out += *it == Step::Lift ? "Lift·" : "Weak·";
  }
  return out + "Empty";
}

std::ostream& operator<<(std::ostream& os, const Ope& tau) { return os << to_string(tau); }

}  // namespace nbe
