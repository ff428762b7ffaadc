#include "cperiod/signal.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cperiod/errors.hpp"
#include "cperiod/parallel.hpp"

namespace cperiod {
namespace {

nlohmann::json with_transform(const nlohmann::json& descriptor, nlohmann::json step) {
  nlohmann::json out = descriptor;
  if (!out.contains("transforms")) out["transforms"] = nlohmann::json::array();
  out["transforms"].push_back(std::move(step));
  return out;
}

void require_compatible(const Signal& f, const Signal& g, const char* op) {
  if (f.dim() != g.dim()) {
    throw ValidationError(std::string(op) + ": dimension mismatch");
  }
  if (f.domain() != g.domain()) {
    throw ValidationError(std::string(op) + ": domain mismatch");
  }
}

std::optional<Truncation> map_tail(const std::optional<Truncation>& t,
                                   std::function<double(const Truncation&, double)> rule) {
  if (!t) return std::nullopt;
  Truncation out;
  out.terms = t->terms;
  out.tail_bound = [inner = *t, rule = std::move(rule)](double h) { return rule(inner, h); };
  return out;
}

}  // namespace

std::string to_string(Domain d) { return d == Domain::FullLine ? "full-line" : "half-line"; }

Signal::Signal(Domain domain, Eigen::Index dim, EvalFn eval, nlohmann::json descriptor)
    : domain_(domain), dim_(dim), eval_(std::move(eval)), descriptor_(std::move(descriptor)) {
  if (dim_ < 1) throw ValidationError("signal dimension must be positive");
  if (!eval_) throw ValidationError("signal needs an evaluation map");
  if (!descriptor_.contains("transforms")) descriptor_["transforms"] = nlohmann::json::array();
}

Signal Signal::custom(Domain domain, Eigen::Index dim, EvalFn eval, const std::string& name) {
  return Signal(domain, dim, std::move(eval),
                {{"name", "custom:" + name}, {"params", nlohmann::json::object()}});
}

Vector Signal::operator()(double t) const {
  if (!contains(t)) {
    std::ostringstream os;
    os << "t = " << t << " lies outside the half-line domain";
    throw DomainError(os.str());
  }
  return eval_(t);
}

void Signal::require_grid(const Grid& grid) const {
  if (domain_ == Domain::HalfLine && grid.start() < 0.0) {
    throw DomainError("grid starts before 0 on a half-line signal");
  }
}

double Signal::tail_bound(double horizon) const {
  if (!truncation_ || !truncation_->tail_bound) return 0.0;
  return truncation_->tail_bound(std::abs(horizon));
}

Signal Signal::with_lipschitz(std::optional<double> L) const {
  if (L && !(*L >= 0.0)) throw ValidationError("Lipschitz constant must be nonnegative");
  Signal out = *this;
  out.lipschitz_ = L;
  return out;
}

Signal Signal::with_truncation(std::optional<Truncation> t) const {
  Signal out = *this;
  out.truncation_ = std::move(t);
  return out;
}

Signal Signal::with_bandwidth(std::optional<double> b) const {
  Signal out = *this;
  out.bandwidth_ = b;
  return out;
}

Signal scale(const Signal& f, complex alpha) {
  Signal out(f.domain(), f.dim(), [f, alpha](double t) -> Vector { return alpha * f.eval_unchecked(t); },
             with_transform(f.descriptor(), {{"kind", "scale"}, {"re", alpha.real()}, {"im", alpha.imag()}}));
  const double a = std::abs(alpha);
  return out.with_lipschitz(f.lipschitz() ? std::optional(a * *f.lipschitz()) : std::nullopt)
      .with_truncation(map_tail(f.truncation(), [a](const Truncation& t, double h) { return a * t.tail_bound(h); }))
      .with_bandwidth(f.bandwidth());
}

Signal shift(const Signal& f, double a) {
  if (!std::isfinite(a)) throw ValidationError("shift must be finite");
  if (f.domain() == Domain::HalfLine && a < 0.0) {
    throw DomainError("negative shift leaves the half-line domain");
  }
  Signal out(f.domain(), f.dim(), [f, a](double t) -> Vector { return f.eval_unchecked(t + a); },
             with_transform(f.descriptor(), {{"kind", "shift"}, {"a", a}}));
  return out.with_lipschitz(f.lipschitz())
      .with_truncation(map_tail(f.truncation(),
                                [a](const Truncation& t, double h) { return t.tail_bound(h + std::abs(a)); }))
      .with_bandwidth(f.bandwidth());
}

Signal dilate(const Signal& f, double b) {
  if (!std::isfinite(b) || b == 0.0) throw ValidationError("dilation factor must be finite and nonzero");
  if (f.domain() == Domain::HalfLine && b < 0.0) {
    throw DomainError("negative dilation leaves the half-line domain");
  }
  Signal out(f.domain(), f.dim(), [f, b](double t) -> Vector { return f.eval_unchecked(b * t); },
             with_transform(f.descriptor(), {{"kind", "dilate"}, {"b", b}}));
  const double ab = std::abs(b);
  return out.with_lipschitz(f.lipschitz() ? std::optional(ab * *f.lipschitz()) : std::nullopt)
      .with_truncation(map_tail(f.truncation(), [ab](const Truncation& t, double h) { return t.tail_bound(ab * h); }))
      .with_bandwidth(f.bandwidth() ? std::optional(ab * *f.bandwidth()) : std::nullopt);
}

Signal reflect(const Signal& f) {
  if (f.domain() != Domain::FullLine) throw DomainError("reflection needs a full-line signal");
  Signal out(f.domain(), f.dim(), [f](double t) -> Vector { return f.eval_unchecked(-t); },
             with_transform(f.descriptor(), {{"kind", "reflect"}}));
  return out.with_lipschitz(f.lipschitz()).with_truncation(f.truncation()).with_bandwidth(f.bandwidth());
}

Signal add(const Signal& f, const Signal& g) {
  require_compatible(f, g, "add");
  Signal out(f.domain(), f.dim(), [f, g](double t) -> Vector { return f.eval_unchecked(t) + g.eval_unchecked(t); },
             with_transform(f.descriptor(), {{"kind", "add"}, {"other", g.descriptor()}}));
  std::optional<double> L;
  if (f.lipschitz() && g.lipschitz()) L = *f.lipschitz() + *g.lipschitz();
  std::optional<Truncation> tr;
  if (f.truncation() || g.truncation()) {
    Truncation t;
    t.terms = std::max(f.truncation() ? f.truncation()->terms : 0, g.truncation() ? g.truncation()->terms : 0);
    t.tail_bound = [f, g](double h) { return f.tail_bound(h) + g.tail_bound(h); };
    tr = t;
  }
  std::optional<double> bw;
  if (f.bandwidth() && g.bandwidth()) bw = std::max(*f.bandwidth(), *g.bandwidth());
  return out.with_lipschitz(L).with_truncation(tr).with_bandwidth(bw);
}

Signal multiply(const Signal& f, const Signal& g) {
  require_compatible(f, g, "multiply");
  Signal out(f.domain(), f.dim(),
             [f, g](double t) -> Vector { return f.eval_unchecked(t).cwiseProduct(g.eval_unchecked(t)); },
             with_transform(f.descriptor(), {{"kind", "multiply"}, {"other", g.descriptor()}}));
  std::optional<double> bw;
  if (f.bandwidth() && g.bandwidth()) bw = *f.bandwidth() + *g.bandwidth();
  // Products of unbounded factors have no global Lipschitz constant or tail bound.
  return out.with_bandwidth(bw);
}

Signal modulus(const Signal& f) {
  Signal out(f.domain(), 1,
             [f](double t) -> Vector {
               Vector v(1);
               v(0) = complex(f.eval_unchecked(t).norm(), 0.0);
               return v;
             },
             with_transform(f.descriptor(), {{"kind", "modulus"}}));
  return out.with_lipschitz(f.lipschitz()).with_truncation(f.truncation());
}

Signal restrict_to_half_line(const Signal& f) {
  Signal out(Domain::HalfLine, f.dim(), [f](double t) -> Vector { return f.eval_unchecked(t); },
             with_transform(f.descriptor(), {{"kind", "restrict"}}));
  return out.with_lipschitz(f.lipschitz()).with_truncation(f.truncation()).with_bandwidth(f.bandwidth());
}

SupNorm sup_norm(const Signal& f, const Grid& grid) {
  f.require_grid(grid);
  SupNorm out;
  out.value = parallel_max(grid.size(), [&](std::size_t i) { return f.eval_unchecked(grid[i]).norm(); });
  if (f.lipschitz()) out.certified = out.value + *f.lipschitz() * grid.step() / 2.0;
  return out;
}

Grid default_grid(const Signal& f) {
  return f.domain() == Domain::FullLine ? default_full_line_grid() : default_half_line_grid();
}

}  // namespace cperiod
