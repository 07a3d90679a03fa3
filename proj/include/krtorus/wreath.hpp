#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace krtorus {

/// Group elements are stored in a canonical integer encoding chosen by the
/// group, so equal elements have equal encodings.
using GroupElement = std::vector<std::int64_t>;

class BaseGroup {
 public:
  virtual ~BaseGroup() = default;

  virtual std::string name() const = 0;
  virtual GroupElement identity() const = 0;
  virtual GroupElement multiply(const GroupElement& a, const GroupElement& b) const = 0;
  virtual GroupElement inverse(const GroupElement& a) const = 0;
  /// All elements for finite groups.
  virtual std::optional<std::vector<GroupElement>> elements() const { return std::nullopt; }
  std::optional<std::int64_t> order() const;
  virtual std::string format(const GroupElement& a) const;
  /// Throws kGroupMismatch when `a` is not a valid encoding.
  virtual void check(const GroupElement& a) const = 0;
};

using BaseGroupPtr = std::shared_ptr<const BaseGroup>;

/// Z_k written additively; Z_1 is the trivial group.
class CyclicGroup final : public BaseGroup {
 public:
  explicit CyclicGroup(std::int64_t k);

  std::int64_t modulus() const { return k_; }
  std::string name() const override;
  GroupElement identity() const override { return {0}; }
  GroupElement multiply(const GroupElement& a, const GroupElement& b) const override;
  GroupElement inverse(const GroupElement& a) const override;
  std::optional<std::vector<GroupElement>> elements() const override;
  std::string format(const GroupElement& a) const override;
  void check(const GroupElement& a) const override;

 private:
  std::int64_t k_;
};

/// Direct product; an element is the concatenation of length-prefixed
/// factor encodings.
class ProductGroup final : public BaseGroup {
 public:
  explicit ProductGroup(std::vector<BaseGroupPtr> factors);

  const std::vector<BaseGroupPtr>& factors() const { return factors_; }
  GroupElement pack(const std::vector<GroupElement>& parts) const;
  std::vector<GroupElement> unpack(const GroupElement& a) const;

  std::string name() const override;
  GroupElement identity() const override;
  GroupElement multiply(const GroupElement& a, const GroupElement& b) const override;
  GroupElement inverse(const GroupElement& a) const override;
  std::optional<std::vector<GroupElement>> elements() const override;
  std::string format(const GroupElement& a) const override;
  void check(const GroupElement& a) const override;

 private:
  std::vector<BaseGroupPtr> factors_;
};

/// Free group on `rank` letters; elements are reduced words with letter g
/// encoded as g + 1 and its inverse as -(g + 1). Stands in for a symbolic
/// atom about which nothing is known.
class FreeGroup final : public BaseGroup {
 public:
  explicit FreeGroup(int rank, std::string letter = "a");

  std::string name() const override;
  GroupElement identity() const override { return {}; }
  GroupElement multiply(const GroupElement& a, const GroupElement& b) const override;
  GroupElement inverse(const GroupElement& a) const override;
  std::string format(const GroupElement& a) const override;
  void check(const GroupElement& a) const override;

 private:
  int rank_;
  std::string letter_;
};

/// Parses "1", "Z1", "Z2", "Z3", ... into a cyclic group.
BaseGroupPtr parse_atom(const std::string& text);

using Shift = std::array<std::int64_t, 2>;

/// Map Z_rows x Z_cols -> G, row-major.
using MapPart = std::vector<GroupElement>;

struct WreathElement {
  MapPart map;
  Shift shift{0, 0};

  friend bool operator==(const WreathElement&, const WreathElement&) = default;
};

/// G wr_{Z_rows x Z_cols} Z^2 with (a, k)(b, l) = (a * b^k, k + l) and
/// b^k(i, j) = b(i + k1 mod rows, j + k2 mod cols). The Z^2 part is kept
/// unreduced.
class WreathProduct {
 public:
  /// Replaces the shift used when acting on the right factor's map; the
  /// default is the identity. Used to build deliberately broken instances.
  using ShiftRule = std::function<Shift(const Shift&)>;

  WreathProduct(BaseGroupPtr base, int rows, int cols, ShiftRule rule = {});

  const BaseGroup& base() const { return *base_; }
  const BaseGroupPtr& base_ptr() const { return base_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int cells() const { return rows_ * cols_; }

  MapPart shift_action(const MapPart& a, const Shift& k) const;
  MapPart pointwise(const MapPart& a, const MapPart& b) const;
  MapPart constant_identity() const;

  WreathElement identity() const;
  WreathElement multiply(const WreathElement& x, const WreathElement& y) const;
  WreathElement inverse(const WreathElement& x) const;

  WreathElement sigma(const MapPart& a) const { return {a, {0, 0}}; }
  Shift proj(const WreathElement& x) const { return x.shift; }

  /// |G|^(rows * cols) for finite G.
  std::optional<std::int64_t> map_count() const;
  /// Every map part, for finite G with at most `limit` of them.
  std::vector<MapPart> all_maps(std::int64_t limit = 1'000'000) const;

  void check(const WreathElement& x) const;
  /// "([[a,b],[c,d]]; (k1,k2))"
  std::string format(const WreathElement& x) const;

 private:
  BaseGroupPtr base_;
  int rows_;
  int cols_;
  ShiftRule rule_;
};

/// Transport of h_ijk in S_ijk to S_i00.
using Transport =
    std::function<GroupElement(int i, int j, int k, const GroupElement& h)>;

/// tau(family)(j, k) = (transport_ijk(h_ijk))_i for family entries stored at
/// (i * n + j) * nm + k. The result lives in Map(Z_n x Z_nm, prod_i S_i00).
MapPart tau_reindex(const std::vector<GroupElement>& family, int r, int n, int nm,
                    const ProductGroup& target, const Transport& transport);

}  // namespace krtorus
