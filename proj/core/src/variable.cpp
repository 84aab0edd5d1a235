#include "jetlie/variable.hpp"

#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>

#include "jetlie/errors.hpp"
#include "jetlie/jet_expr.hpp"

namespace jetlie {

struct ParameterRecord {
  std::string name;
};

namespace {

const ParameterRecord* intern_parameter(std::string_view name) {
  static std::mutex mutex;
  static std::unordered_map<std::string, std::unique_ptr<ParameterRecord>> table;
  std::lock_guard lock(mutex);
  auto it = table.find(std::string(name));
  if (it != table.end()) return it->second.get();
  auto rec = std::make_unique<ParameterRecord>(ParameterRecord{std::string(name)});
  const ParameterRecord* ptr = rec.get();
  table.emplace(std::string(name), std::move(rec));
  return ptr;
}

int deriv_total(const DerivIndex& d) {
  int t = 0;
  for (auto c : d) t += c;
  return t;
}

}  // namespace

Variable Variable::x() {
  Variable v;
  v.kind_ = VarKind::independent;
  v.a_ = 0;
  return v;
}

Variable Variable::y() {
  Variable v;
  v.kind_ = VarKind::independent;
  v.a_ = 1;
  return v;
}

Variable Variable::u() { return jet(0, 0); }

Variable Variable::jet(int i, int j) {
  if (i < 0 || j < 0) throw PreconditionError("negative jet multi-index");
  if (i + j > kMaxJetOrder) {
    throw OrderOverflow("jet order " + std::to_string(i + j) + " exceeds " + std::to_string(kMaxJetOrder));
  }
  Variable v;
  v.kind_ = VarKind::jet;
  v.a_ = static_cast<std::uint8_t>(i);
  v.b_ = static_cast<std::uint8_t>(j);
  return v;
}

Variable Variable::parameter(std::string_view name) {
  if (name.empty()) throw PreconditionError("empty parameter name");
  Variable v;
  v.kind_ = VarKind::parameter;
  v.sym_ = intern_parameter(name);
  return v;
}

Variable Variable::func_deriv(const Application* app, const DerivIndex& index) {
  if (app == nullptr) throw PreconditionError("null application");
  for (std::size_t k = app->args.size(); k < index.size(); ++k) {
    if (index[k] != 0) throw PreconditionError("derivative slot beyond arity of " + app->name);
  }
  Variable v;
  v.kind_ = VarKind::func_deriv;
  v.sym_ = app;
  v.d_ = index;
  return v;
}

std::string_view Variable::parameter_name() const {
  if (kind_ != VarKind::parameter) return {};
  return static_cast<const ParameterRecord*>(sym_)->name;
}

const Application* Variable::application() const noexcept {
  return kind_ == VarKind::func_deriv ? static_cast<const Application*>(sym_) : nullptr;
}

int Variable::deriv_order() const noexcept { return deriv_total(d_); }

Variable Variable::with_extra_deriv(int slot) const {
  if (kind_ != VarKind::func_deriv) throw PreconditionError("not a function symbol");
  const Application* app = application();
  if (slot < 0 || slot >= static_cast<int>(app->args.size())) {
    throw PreconditionError("derivative slot out of range for " + app->name);
  }
  DerivIndex d = d_;
  ++d[static_cast<std::size_t>(slot)];
  return func_deriv(app, d);
}

Variable Variable::jet_shifted(int dir) const {
  if (kind_ != VarKind::jet) throw PreconditionError("not a jet coordinate");
  return dir == 0 ? jet(a_ + 1, b_) : jet(a_, b_ + 1);
}

std::string Variable::str() const {
  switch (kind_) {
    case VarKind::independent:
      return a_ == 0 ? "x" : "y";
    case VarKind::jet: {
      if (a_ + b_ == 0) return "u";
      std::string s = "u_";
      s.append(a_, 'x');
      s.append(b_, 'y');
      return s;
    }
    case VarKind::parameter:
      return std::string(parameter_name());
    case VarKind::func_deriv: {
      const Application* app = application();
      std::string s = app->name;
      if (deriv_total(d_) > 0) {
        s += '_';
        for (std::size_t k = 0; k < d_.size(); ++k) s.append(d_[k], static_cast<char>('1' + k));
      }
      s += '(';
      for (std::size_t k = 0; k < app->args.size(); ++k) {
        if (k) s += ", ";
        s += app->args[k].str();
      }
      s += ')';
      return s;
    }
  }
  return {};
}

std::size_t Variable::hash() const noexcept {
  std::size_t h = static_cast<std::size_t>(kind_) * 0x9E3779B97F4A7C15ull;
  h ^= (static_cast<std::size_t>(a_) << 8) ^ (static_cast<std::size_t>(b_) << 16);
  for (auto c : d_) h = h * 31 + c;
  h ^= std::hash<const void*>{}(sym_) + 0x9E3779B9 + (h << 6) + (h >> 2);
  return h;
}

std::strong_ordering operator<=>(const Variable& a, const Variable& b) {
  if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
  switch (a.kind_) {
    case VarKind::independent:
      return a.a_ <=> b.a_;
    case VarKind::jet: {
      int oa = a.a_ + a.b_, ob = b.a_ + b.b_;
      if (oa != ob) return oa <=> ob;
      return b.a_ <=> a.a_;  // more x-derivatives first
    }
    case VarKind::parameter:
      if (a.sym_ == b.sym_) return std::strong_ordering::equal;
      return a.parameter_name().compare(b.parameter_name()) <=> 0;
    case VarKind::func_deriv: {
      if (a.sym_ != b.sym_) {
        int c = a.application()->key.compare(b.application()->key);
        return c <=> 0;
      }
      int ta = deriv_total(a.d_), tb = deriv_total(b.d_);
      if (ta != tb) return ta <=> tb;
      for (std::size_t k = 0; k < a.d_.size(); ++k) {
        if (a.d_[k] != b.d_[k]) return b.d_[k] <=> a.d_[k];
      }
      return std::strong_ordering::equal;
    }
  }
  return std::strong_ordering::equal;
}

}  // namespace jetlie
