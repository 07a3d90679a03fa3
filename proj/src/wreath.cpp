#include "krtorus/wreath.hpp"

#include <algorithm>
#include <cctype>

#include "krtorus/error.hpp"

namespace krtorus {

namespace {

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

std::optional<std::int64_t> BaseGroup::order() const {
  auto all = elements();
  if (!all) return std::nullopt;
  return static_cast<std::int64_t>(all->size());
}

std::string BaseGroup::format(const GroupElement& a) const {
  std::string out = "[";
  for (std::size_t i = 0; i < a.size(); ++i) out += (i ? "," : "") + std::to_string(a[i]);
  return out + "]";
}

CyclicGroup::CyclicGroup(std::int64_t k) : k_(k) {
  if (k < 1) fail(ErrorCode::kRange, "cyclic group order must be positive");
}

std::string CyclicGroup::name() const { return "Z" + std::to_string(k_); }

GroupElement CyclicGroup::multiply(const GroupElement& a, const GroupElement& b) const {
  return {(a[0] + b[0]) % k_};
}

GroupElement CyclicGroup::inverse(const GroupElement& a) const { return {(k_ - a[0]) % k_}; }

std::optional<std::vector<GroupElement>> CyclicGroup::elements() const {
  std::vector<GroupElement> out;
  for (std::int64_t x = 0; x < k_; ++x) out.push_back({x});
  return out;
}

std::string CyclicGroup::format(const GroupElement& a) const { return std::to_string(a[0]); }

void CyclicGroup::check(const GroupElement& a) const {
  if (a.size() != 1 || a[0] < 0 || a[0] >= k_)
    fail(ErrorCode::kGroupMismatch, "not an element of " + name());
}

ProductGroup::ProductGroup(std::vector<BaseGroupPtr> factors) : factors_(std::move(factors)) {}

GroupElement ProductGroup::pack(const std::vector<GroupElement>& parts) const {
  if (parts.size() != factors_.size())
    fail(ErrorCode::kGroupMismatch, "wrong number of factors for " + name());
  GroupElement out;
  for (const GroupElement& p : parts) {
    out.push_back(static_cast<std::int64_t>(p.size()));
    out.insert(out.end(), p.begin(), p.end());
  }
  return out;
}

std::vector<GroupElement> ProductGroup::unpack(const GroupElement& a) const {
  std::vector<GroupElement> parts;
  std::size_t pos = 0;
  for (std::size_t f = 0; f < factors_.size(); ++f) {
    if (pos >= a.size() || a[pos] < 0 || pos + 1 + a[pos] > a.size())
      fail(ErrorCode::kGroupMismatch, "malformed element of " + name());
    parts.emplace_back(a.begin() + pos + 1, a.begin() + pos + 1 + a[pos]);
    pos += 1 + a[pos];
  }
  if (pos != a.size()) fail(ErrorCode::kGroupMismatch, "malformed element of " + name());
  return parts;
}

std::string ProductGroup::name() const {
  if (factors_.empty()) return "1";
  std::string out;
  for (std::size_t f = 0; f < factors_.size(); ++f)
    out += (f ? " x " : "") + factors_[f]->name();
  return out;
}

GroupElement ProductGroup::identity() const {
  std::vector<GroupElement> parts;
  for (const auto& f : factors_) parts.push_back(f->identity());
  return pack(parts);
}

GroupElement ProductGroup::multiply(const GroupElement& a, const GroupElement& b) const {
  auto pa = unpack(a), pb = unpack(b);
  for (std::size_t f = 0; f < factors_.size(); ++f) pa[f] = factors_[f]->multiply(pa[f], pb[f]);
  return pack(pa);
}

GroupElement ProductGroup::inverse(const GroupElement& a) const {
  auto pa = unpack(a);
  for (std::size_t f = 0; f < factors_.size(); ++f) pa[f] = factors_[f]->inverse(pa[f]);
  return pack(pa);
}

std::optional<std::vector<GroupElement>> ProductGroup::elements() const {
  std::vector<std::vector<GroupElement>> each;
  for (const auto& f : factors_) {
    auto all = f->elements();
    if (!all) return std::nullopt;
    each.push_back(std::move(*all));
  }
  std::vector<GroupElement> out;
  std::vector<std::size_t> idx(factors_.size(), 0);
  for (;;) {
    std::vector<GroupElement> parts;
    for (std::size_t f = 0; f < factors_.size(); ++f) parts.push_back(each[f][idx[f]]);
    out.push_back(pack(parts));
    std::size_t f = factors_.size();
    while (f > 0 && ++idx[f - 1] == each[f - 1].size()) idx[--f] = 0;
    if (f == 0) break;
  }
  return out;
}

std::string ProductGroup::format(const GroupElement& a) const {
  auto parts = unpack(a);
  std::string out = "(";
  for (std::size_t f = 0; f < factors_.size(); ++f)
    out += (f ? "," : "") + factors_[f]->format(parts[f]);
  return out + ")";
}

void ProductGroup::check(const GroupElement& a) const {
  auto parts = unpack(a);
  for (std::size_t f = 0; f < factors_.size(); ++f) factors_[f]->check(parts[f]);
}

FreeGroup::FreeGroup(int rank, std::string letter) : rank_(rank), letter_(std::move(letter)) {
  if (rank < 0) fail(ErrorCode::kRange, "free group rank must be non-negative");
}

std::string FreeGroup::name() const { return "F" + std::to_string(rank_); }

GroupElement FreeGroup::multiply(const GroupElement& a, const GroupElement& b) const {
  GroupElement out = a;
  for (std::int64_t x : b) {
    if (!out.empty() && out.back() == -x) out.pop_back();
    else out.push_back(x);
  }
  return out;
}

GroupElement FreeGroup::inverse(const GroupElement& a) const {
  GroupElement out(a.rbegin(), a.rend());
  for (auto& x : out) x = -x;
  return out;
}

std::string FreeGroup::format(const GroupElement& a) const {
  if (a.empty()) return "1";
  std::string out;
  for (std::int64_t x : a)
    out += letter_ + std::to_string(x > 0 ? x : -x) + (x < 0 ? "^-1" : "");
  return out;
}

void FreeGroup::check(const GroupElement& a) const {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0 || a[i] > rank_ || a[i] < -rank_ || (i > 0 && a[i] == -a[i - 1]))
      fail(ErrorCode::kGroupMismatch, "not a reduced word of " + name());
  }
}

BaseGroupPtr parse_atom(const std::string& text) {
  std::string t;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
  if (t == "1") return std::make_shared<CyclicGroup>(1);
  if (t.size() >= 2 && (t[0] == 'Z' || t[0] == 'z') &&
      std::all_of(t.begin() + 1, t.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }) &&
      t.size() <= 10) {
    std::int64_t k = std::stoll(t.substr(1));
    if (k >= 1) return std::make_shared<CyclicGroup>(k);
  }
  fail(ErrorCode::kParse, "unknown atom group '" + text + "' (expected 1 or Zk)");
}

WreathProduct::WreathProduct(BaseGroupPtr base, int rows, int cols, ShiftRule rule)
    : base_(std::move(base)), rows_(rows), cols_(cols), rule_(std::move(rule)) {
  if (!base_) fail(ErrorCode::kGroupMismatch, "missing base group");
  if (rows < 1 || cols < 1) fail(ErrorCode::kRange, "grid dimensions must be positive");
}

MapPart WreathProduct::shift_action(const MapPart& a, const Shift& k) const {
  MapPart out(a.size());
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      out[i * cols_ + j] =
          a[floor_mod(i + k[0], rows_) * cols_ + floor_mod(j + k[1], cols_)];
  return out;
}

MapPart WreathProduct::pointwise(const MapPart& a, const MapPart& b) const {
  MapPart out(a.size());
  for (std::size_t x = 0; x < a.size(); ++x) out[x] = base_->multiply(a[x], b[x]);
  return out;
}

MapPart WreathProduct::constant_identity() const { return MapPart(cells(), base_->identity()); }

WreathElement WreathProduct::identity() const { return {constant_identity(), {0, 0}}; }

WreathElement WreathProduct::multiply(const WreathElement& x, const WreathElement& y) const {
  if (static_cast<int>(x.map.size()) != cells() || static_cast<int>(y.map.size()) != cells())
    fail(ErrorCode::kGroupMismatch, "map part has the wrong grid size");
  const Shift acting = rule_ ? rule_(x.shift) : x.shift;
  return {pointwise(x.map, shift_action(y.map, acting)),
          {x.shift[0] + y.shift[0], x.shift[1] + y.shift[1]}};
}

WreathElement WreathProduct::inverse(const WreathElement& x) const {
  MapPart inv(x.map.size());
  for (std::size_t c = 0; c < x.map.size(); ++c) inv[c] = base_->inverse(x.map[c]);
  const Shift back{-x.shift[0], -x.shift[1]};
  return {shift_action(inv, rule_ ? rule_(back) : back), back};
}

std::optional<std::int64_t> WreathProduct::map_count() const {
  auto order = base_->order();
  if (!order) return std::nullopt;
  std::int64_t count = 1;
  for (int c = 0; c < cells(); ++c) {
    if (count > (std::int64_t{1} << 62) / std::max<std::int64_t>(*order, 1))
      fail(ErrorCode::kRange, "map count overflows");
    count *= *order;
  }
  return count;
}

std::vector<MapPart> WreathProduct::all_maps(std::int64_t limit) const {
  auto elems = base_->elements();
  if (!elems) fail(ErrorCode::kRange, "base group " + base_->name() + " is not enumerable");
  auto count = map_count();
  if (*count > limit) fail(ErrorCode::kRange, "too many maps to enumerate");
  std::vector<MapPart> out;
  out.reserve(*count);
  std::vector<std::size_t> idx(cells(), 0);
  for (;;) {
    MapPart m(cells());
    for (int c = 0; c < cells(); ++c) m[c] = (*elems)[idx[c]];
    out.push_back(std::move(m));
    int c = cells();
    while (c > 0 && ++idx[c - 1] == elems->size()) idx[--c] = 0;
    if (c == 0) break;
  }
  return out;
}

void WreathProduct::check(const WreathElement& x) const {
  if (static_cast<int>(x.map.size()) != cells())
    fail(ErrorCode::kGroupMismatch, "map part has the wrong grid size");
  for (const auto& g : x.map) base_->check(g);
}

std::string WreathProduct::format(const WreathElement& x) const {
  std::string out = "([";
  for (int i = 0; i < rows_; ++i) {
    out += i ? ",[" : "[";
    for (int j = 0; j < cols_; ++j) out += (j ? "," : "") + base_->format(x.map[i * cols_ + j]);
    out += "]";
  }
  return out + "]; (" + std::to_string(x.shift[0]) + "," + std::to_string(x.shift[1]) + "))";
}

MapPart tau_reindex(const std::vector<GroupElement>& family, int r, int n, int nm,
                    const ProductGroup& target, const Transport& transport) {
  if (static_cast<int>(family.size()) != r * n * nm)
    fail(ErrorCode::kRange, "family must have one entry per (i, j, k)");
  if (static_cast<int>(target.factors().size()) != r)
    fail(ErrorCode::kGroupMismatch, "target product needs one factor per orbit");
  MapPart out(n * nm);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < nm; ++k) {
      std::vector<GroupElement> parts;
      for (int i = 0; i < r; ++i) {
        GroupElement moved = transport(i, j, k, family[(i * n + j) * nm + k]);
        target.factors()[i]->check(moved);
        parts.push_back(std::move(moved));
      }
      out[j * nm + k] = target.pack(parts);
    }
  return out;
}

}  // namespace krtorus
