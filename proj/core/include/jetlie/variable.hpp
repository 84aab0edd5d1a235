#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace jetlie {

/// Highest jet order representable. Euler-Lagrange operators of second-order
/// Lagrangians need D_xx of second-order terms, hence 4.
inline constexpr int kMaxJetOrder = 4;

/// Largest arity of an opaque function symbol.
inline constexpr int kMaxArity = 6;

struct Application;
struct ParameterRecord;

enum class VarKind : std::uint8_t {
  independent = 0,  // x or y
  jet = 1,          // u_{x^i y^j}, (0,0) is u itself
  parameter = 2,    // alpha, a, C1, eps, ...
  func_deriv = 3,   // partial derivative of an applied opaque function
};

/// Derivative counts per formal argument slot of an opaque function.
using DerivIndex = std::array<std::uint8_t, kMaxArity>;

/// A coordinate of the extended jet space.
///
/// Variables are small values. Parameters and function applications refer to
/// interned records that live for the whole process, so two variables compare
/// equal iff they denote the same symbol. The total order is
///   x < y < u < u_x < u_y < u_xx < u_xy < u_yy < (3rd order) < (4th order)
///     < parameters (by name) < function derivatives (by application, index).
class Variable {
 public:
  static Variable x();
  static Variable y();
  static Variable u();
  /// u differentiated i times in x and j times in y. Throws OrderOverflow if i+j > 4.
  static Variable jet(int i, int j);
  static Variable parameter(std::string_view name);
  static Variable func_deriv(const Application* app, const DerivIndex& index);

  VarKind kind() const noexcept { return kind_; }
  bool is_independent() const noexcept { return kind_ == VarKind::independent; }
  bool is_jet() const noexcept { return kind_ == VarKind::jet; }
  bool is_parameter() const noexcept { return kind_ == VarKind::parameter; }
  bool is_func_deriv() const noexcept { return kind_ == VarKind::func_deriv; }

  /// For independents: 0 for x, 1 for y. For jets: number of x derivatives.
  int i() const noexcept { return a_; }
  /// For jets: number of y derivatives.
  int j() const noexcept { return b_; }
  /// Jet order (0 for u and for all non-jet variables).
  int order() const noexcept { return kind_ == VarKind::jet ? a_ + b_ : 0; }

  std::string_view parameter_name() const;
  const Application* application() const noexcept;
  const DerivIndex& deriv() const noexcept { return d_; }
  int deriv_order() const noexcept;

  /// Same application with one more derivative in `slot`.
  Variable with_extra_deriv(int slot) const;
  /// Jet obtained by one more derivative in direction dir (0 = x, 1 = y).
  Variable jet_shifted(int dir) const;

  std::string str() const;
  std::size_t hash() const noexcept;

  friend bool operator==(const Variable& a, const Variable& b) noexcept {
    return a.kind_ == b.kind_ && a.a_ == b.a_ && a.b_ == b.b_ && a.d_ == b.d_ && a.sym_ == b.sym_;
  }
  friend std::strong_ordering operator<=>(const Variable& a, const Variable& b);

 private:
  VarKind kind_ = VarKind::independent;
  std::uint8_t a_ = 0;
  std::uint8_t b_ = 0;
  DerivIndex d_{};
  const void* sym_ = nullptr;
};

struct VariableHash {
  std::size_t operator()(const Variable& v) const noexcept { return v.hash(); }
};

}  // namespace jetlie
