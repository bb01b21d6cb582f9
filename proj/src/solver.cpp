#include "cfdtm/solver.hpp"

#include <cmath>
#include <optional>
#include <sstream>

namespace cfdtm {

std::string_view to_string(DiagCode code) {
  switch (code) {
    case DiagCode::AlphaRange: return "alpha-range";
    case DiagCode::BaseNegative: return "t0-negative";
    case DiagCode::PrincipalNotMultiple: return "principal-not-multiple";
    case DiagCode::DerivNotMultiple: return "deriv-not-multiple";
    case DiagCode::Causality: return "causality";
    case DiagCode::MonomialNotRepresentable: return "monomial-not-representable";
    case DiagCode::InitLength: return "init-length";
    case DiagCode::TooFewTerms: return "too-few-terms";
    case DiagCode::BadArity: return "bad-arity";
    case DiagCode::BadExponent: return "bad-exponent";
    case DiagCode::NonFinite: return "non-finite";
  }
  return "?";
}

namespace {

std::string describe(const std::vector<Diagnostic>& diags) {
  std::ostringstream os;
  os << "problem failed validation:";
  for (const auto& d : diags) os << "\n  [" << to_string(d.code) << "] " << d.path << ": " << d.message;
  return os.str();
}

class RhsChecker {
 public:
  RhsChecker(double alpha, std::optional<long> s_max, std::vector<Diagnostic>& out)
      : alpha_(alpha), s_max_(s_max), out_(out) {}

  void visit(const Expr& e, const std::string& path) {
    const bool alpha_ok = alpha_ > 0.0 && alpha_ <= 1.0;
    switch (e.kind()) {
      case ExprKind::Const:
      case ExprKind::ExpSrc:
        finite(e.param(), path);
        break;
      case ExprKind::SinSrc:
      case ExprKind::CosSrc:
        finite(e.param(), path);
        finite(e.phase(), path);
        break;
      case ExprKind::Deriv: {
        const double beta = e.param();
        if (!(beta > 0.0) || !std::isfinite(beta)) {
          emit(DiagCode::DerivNotMultiple, path, "derivative order must be positive");
          break;
        }
        if (!alpha_ok) break;
        const auto s = near_integer(beta / alpha_);
        if (!s || *s < 1) {
          emit(DiagCode::DerivNotMultiple, path,
               "order " + fmt(beta) + " is not an integer multiple of alpha");
        } else if (s_max_ && *s > *s_max_ - 1) {
          emit(DiagCode::Causality, path,
               "right-hand side order " + fmt(beta) +
                   " must be less than the principal order (at most beta_max - alpha)");
        }
        break;
      }
      case ExprKind::Monomial: {
        const double p = e.param();
        if (!(p >= 0.0) || !std::isfinite(p)) {
          emit(DiagCode::MonomialNotRepresentable, path, "power must be >= 0");
        } else if (alpha_ok && !near_integer(p / alpha_)) {
          emit(DiagCode::MonomialNotRepresentable, path,
               "t^" + fmt(p) + " is not on the alpha-grid (p/alpha not an integer)");
        }
        break;
      }
      case ExprKind::Mul:
        if (e.children().size() < 2) {
          emit(DiagCode::BadArity, path, "a product needs at least two factors");
        }
        break;
      case ExprKind::Pow:
        if (e.exponent() < 1) emit(DiagCode::BadExponent, path, "exponent must be >= 1");
        break;
      default:
        break;
    }
    for (std::size_t i = 0; i < e.children().size(); ++i) {
      visit(e.children()[i], path + "/" + std::to_string(i));
    }
  }

 private:
  static std::string fmt(double x) {
    std::ostringstream os;
    os << x;
    return os.str();
  }
  void finite(double x, const std::string& path) {
    if (!std::isfinite(x)) emit(DiagCode::NonFinite, path, "non-finite parameter");
  }
  void emit(DiagCode c, const std::string& path, std::string msg) {
    out_.push_back({c, path, std::move(msg)});
  }

  double alpha_;
  std::optional<long> s_max_;
  std::vector<Diagnostic>& out_;
};

// Per-node coefficient streams for one solve. Each node memoizes its
// coefficients in index order; products are binary so Mul and Pow chains
// reuse the partial products.
class CoefficientStreams {
 public:
  CoefficientStreams(const Expr& rhs, double alpha, const std::vector<double>& y)
      : alpha_(alpha), y_(y) {
    root_ = compile(rhs);
  }

  double at(std::size_t k) { return at(root_, k); }

 private:
  enum class Op { Const, Unknown, Deriv, Add, Sub, Neg, Mul2, Delta, Exp, Sin, Cos };

  struct Node {
    Op op;
    double a = 0.0;
    double b = 0.0;
    std::size_t lhs = 0;
    std::size_t rhs = 0;
    std::optional<DerivOrder> order{};
    std::vector<double> memo{};
    double magnitude = 1.0;  // lambda^k / (alpha^k k!) for the exp/trig sources
  };

  std::size_t push(Node n) {
    nodes_.push_back(std::move(n));
    return nodes_.size() - 1;
  }

  std::size_t compile(const Expr& e) {
    switch (e.kind()) {
      case ExprKind::Const: return push({Op::Const, e.param()});
      case ExprKind::Unknown: return push({Op::Unknown});
      case ExprKind::Deriv: {
        Node n{Op::Deriv};
        n.order.emplace(e.param(), alpha_);
        return push(std::move(n));
      }
      case ExprKind::Add:
      case ExprKind::Sub: {
        const auto l = compile(e.children()[0]);
        const auto r = compile(e.children()[1]);
        Node n{e.kind() == ExprKind::Add ? Op::Add : Op::Sub};
        n.lhs = l;
        n.rhs = r;
        return push(std::move(n));
      }
      case ExprKind::Neg: {
        Node n{Op::Neg};
        n.lhs = compile(e.children()[0]);
        return push(std::move(n));
      }
      case ExprKind::Mul: {
        std::size_t acc = compile(e.children()[0]);
        for (std::size_t i = 1; i < e.children().size(); ++i) {
          acc = product(acc, compile(e.children()[i]));
        }
        return acc;
      }
      case ExprKind::Pow: {
        const std::size_t base = compile(e.children()[0]);
        std::size_t acc = base;
        for (int i = 1; i < e.exponent(); ++i) acc = product(acc, base);
        return acc;
      }
      case ExprKind::Monomial: {
        Node n{Op::Delta};
        n.a = static_cast<double>(*near_integer(e.param() / alpha_));
        return push(std::move(n));
      }
      case ExprKind::ExpSrc: return push({Op::Exp, e.param()});
      case ExprKind::SinSrc: return push({Op::Sin, e.param(), e.phase()});
      case ExprKind::CosSrc: return push({Op::Cos, e.param(), e.phase()});
    }
    throw std::logic_error("unhandled expression kind");
  }

  std::size_t product(std::size_t l, std::size_t r) {
    Node n{Op::Mul2};
    n.lhs = l;
    n.rhs = r;
    return push(std::move(n));
  }

  double solution(std::size_t idx) const {
    if (idx >= y_.size()) {
      throw std::out_of_range("coefficient Y(" + std::to_string(idx) +
                              ") requested before it is known");
    }
    return y_[idx];
  }

  double at(std::size_t id, std::size_t k) {
    while (nodes_[id].memo.size() <= k) {
      const std::size_t next = nodes_[id].memo.size();
      const double v = compute(id, next);
      nodes_[id].memo.push_back(v);
    }
    return nodes_[id].memo[k];
  }

  double compute(std::size_t id, std::size_t k) {
    // at() on a child may reallocate that child's memo; index nodes_ afresh
    // after each call.
    const Op op = nodes_[id].op;
    switch (op) {
      case Op::Const: return k == 0 ? nodes_[id].a : 0.0;
      case Op::Unknown: return solution(k);
      case Op::Deriv: {
        const auto& order = *nodes_[id].order;
        return gamma_ratio(k, order) * solution(k + order.shift());
      }
      case Op::Add: {
        const auto [l, r] = std::pair{nodes_[id].lhs, nodes_[id].rhs};
        return at(l, k) + at(r, k);
      }
      case Op::Sub: {
        const auto [l, r] = std::pair{nodes_[id].lhs, nodes_[id].rhs};
        return at(l, k) - at(r, k);
      }
      case Op::Neg: return -at(nodes_[id].lhs, k);
      case Op::Mul2: {
        const auto [l, r] = std::pair{nodes_[id].lhs, nodes_[id].rhs};
        at(l, k);
        at(r, k);
        const auto& lm = nodes_[l].memo;
        const auto& rm = nodes_[r].memo;
        double acc = 0.0;
        for (std::size_t i = 0; i <= k; ++i) acc += lm[i] * rm[k - i];
        return acc;
      }
      case Op::Delta: return static_cast<double>(k) == nodes_[id].a ? 1.0 : 0.0;
      case Op::Exp:
      case Op::Sin:
      case Op::Cos: {
        auto& n = nodes_[id];
        if (k > 0) n.magnitude *= n.a / (alpha_ * static_cast<double>(k));
        if (op == Op::Exp) return n.magnitude;
        const double c = n.b;
        const bool cosine = op == Op::Cos;
        switch (k % 4) {
          case 0: return n.magnitude * (cosine ? std::cos(c) : std::sin(c));
          case 1: return n.magnitude * (cosine ? -std::sin(c) : std::cos(c));
          case 2: return n.magnitude * (cosine ? -std::cos(c) : -std::sin(c));
          default: return n.magnitude * (cosine ? std::sin(c) : -std::cos(c));
        }
      }
    }
    throw std::logic_error("unhandled stream op");
  }

  double alpha_;
  const std::vector<double>& y_;
  std::vector<Node> nodes_;
  std::size_t root_ = 0;
};

}  // namespace

std::vector<Diagnostic> validate(const OdeProblem& p) {
  std::vector<Diagnostic> out;
  const bool alpha_ok = p.alpha > 0.0 && p.alpha <= 1.0;
  if (!alpha_ok) out.push_back({DiagCode::AlphaRange, "alpha", "alpha must lie in (0, 1]"});
  if (!(p.t0 >= 0.0) || !std::isfinite(p.t0)) {
    out.push_back({DiagCode::BaseNegative, "t0", "t0 must be finite and >= 0"});
  }

  std::optional<long> s_max;
  if (!(p.beta_max > 0.0) || !std::isfinite(p.beta_max)) {
    out.push_back({DiagCode::PrincipalNotMultiple, "beta_max", "principal order must be positive"});
  } else if (alpha_ok) {
    s_max = near_integer(p.beta_max / p.alpha);
    if (!s_max || *s_max < 1) {
      s_max.reset();
      out.push_back({DiagCode::PrincipalNotMultiple, "beta_max",
                     "principal order is not a positive integer multiple of alpha"});
    }
  }

  if (p.beta_max > 0.0 && std::isfinite(p.beta_max)) {
    const auto needed = static_cast<std::size_t>(std::ceil(p.beta_max));
    if (p.init.size() != needed) {
      out.push_back({DiagCode::InitLength, "init",
                     "expected " + std::to_string(needed) + " initial values y(t0) .. y^(" +
                         std::to_string(needed - 1) + ")(t0), got " +
                         std::to_string(p.init.size())});
    }
  }
  for (std::size_t j = 0; j < p.init.size(); ++j) {
    if (!std::isfinite(p.init[j])) {
      out.push_back({DiagCode::NonFinite, "init/" + std::to_string(j), "non-finite initial value"});
    }
  }
  if (s_max && p.n_terms < static_cast<std::size_t>(*s_max)) {
    out.push_back({DiagCode::TooFewTerms, "n_terms",
                   "n_terms must be at least beta_max/alpha = " + std::to_string(*s_max)});
  }

  RhsChecker(p.alpha, s_max, out).visit(p.rhs, "rhs");
  return out;
}

ValidationError::ValidationError(std::vector<Diagnostic> diags)
    : std::invalid_argument(describe(diags)), diags_(std::move(diags)) {}

double rhs_coefficient(const Expr& rhs, std::size_t k, const FracSeries& y) {
  const std::vector<double> coeffs(y.coeffs().begin(), y.coeffs().end());
  CoefficientStreams streams(rhs, y.alpha(), coeffs);
  return streams.at(k);
}

FracSeries solve(const OdeProblem& p) {
  if (auto diags = validate(p); !diags.empty()) throw ValidationError(std::move(diags));

  const DerivOrder principal(p.beta_max, p.alpha);
  std::vector<double> y = seed_initial_conditions(p.alpha, p.beta_max, p.init);
  const std::size_t s_max = principal.shift();
  y.reserve(p.n_terms + 1);

  CoefficientStreams streams(p.rhs, p.alpha, y);
  for (std::size_t k = 0; k + s_max <= p.n_terms; ++k) {
    y.push_back(streams.at(k) / gamma_ratio(k, principal));
  }
  return {p.alpha, p.t0, std::move(y)};
}

}  // namespace cfdtm
