#include "qdrobin/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace qdrobin {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

double star_r(const DomainSpec& d, double phi, int deriv) {
  double v = (deriv == 0) ? d.r0 : 0.0;
  const std::size_t kc = d.cos_coeffs.size();
  const std::size_t ks = d.sin_coeffs.size();
  for (std::size_t i = 0; i < std::max(kc, ks); ++i) {
    const double k = static_cast<double>(i + 1);
    const double c = i < kc ? d.cos_coeffs[i] : 0.0;
    const double s = i < ks ? d.sin_coeffs[i] : 0.0;
    switch (deriv) {
      case 0: v += c * std::cos(k * phi) + s * std::sin(k * phi); break;
      case 1: v += k * (-c * std::sin(k * phi) + s * std::cos(k * phi)); break;
      case 2: v += -k * k * (c * std::cos(k * phi) + s * std::sin(k * phi)); break;
    }
  }
  return v;
}

}  // namespace

DomainSpec DomainSpec::disk(double R) {
  DomainSpec d;
  d.kind = DomainKind::disk;
  d.radius = R;
  validate(d);
  return d;
}

DomainSpec DomainSpec::ellipse(double A, double B) {
  DomainSpec d;
  d.kind = DomainKind::ellipse;
  d.semi_axis_a = A;
  d.semi_axis_b = B;
  validate(d);
  return d;
}

DomainSpec DomainSpec::polar_star(double r0, std::vector<double> cos_coeffs,
                                  std::vector<double> sin_coeffs) {
  DomainSpec d;
  d.kind = DomainKind::polar_star;
  d.r0 = r0;
  d.cos_coeffs = std::move(cos_coeffs);
  d.sin_coeffs = std::move(sin_coeffs);
  validate(d);
  return d;
}

std::string DomainSpec::id() const {
  std::ostringstream os;
  switch (kind) {
    case DomainKind::disk:
      os << "disk(R=" << radius << ")";
      break;
    case DomainKind::ellipse:
      os << "ellipse(A=" << semi_axis_a << ",B=" << semi_axis_b << ")";
      break;
    case DomainKind::polar_star:
      os << "polar_star(r0=" << r0;
      for (double c : cos_coeffs) os << ",c=" << c;
      for (double s : sin_coeffs) os << ",s=" << s;
      os << ")";
      break;
  }
  return os.str();
}

void validate(const DomainSpec& d) {
  switch (d.kind) {
    case DomainKind::disk:
      if (!(d.radius > 0.0)) throw std::invalid_argument("disk: radius must be > 0");
      break;
    case DomainKind::ellipse:
      if (!(d.semi_axis_b > 0.0) || !(d.semi_axis_a >= d.semi_axis_b))
        throw std::invalid_argument("ellipse: requires A >= B > 0");
      break;
    case DomainKind::polar_star: {
      if (d.cos_coeffs.size() > 64 || d.sin_coeffs.size() > 64)
        throw std::invalid_argument("polar_star: too many Fourier coefficients");
      // boundary must not cross the origin
      const int n = 8192;
      for (int i = 0; i < n; ++i) {
        const double phi = kTwoPi * i / n;
        if (!(star_r(d, phi, 0) > 0.0))
          throw std::invalid_argument("polar_star: r(phi) must stay positive");
      }
      break;
    }
  }
}

DomainSpec scaled(const DomainSpec& d, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("scaled: factor must be > 0");
  DomainSpec s = d;
  s.radius *= t;
  s.semi_axis_a *= t;
  s.semi_axis_b *= t;
  s.r0 *= t;
  for (double& c : s.cos_coeffs) c *= t;
  for (double& c : s.sin_coeffs) c *= t;
  return s;
}

CurvePoint eval_curve(const DomainSpec& d, double t) {
  CurvePoint p{};
  const double ct = std::cos(t), st = std::sin(t);
  switch (d.kind) {
    case DomainKind::disk:
      p = {d.radius * ct, d.radius * st, -d.radius * st, d.radius * ct,
           -d.radius * ct, -d.radius * st};
      break;
    case DomainKind::ellipse: {
      const double A = d.semi_axis_a, B = d.semi_axis_b;
      p = {A * ct, B * st, -A * st, B * ct, -A * ct, -B * st};
      break;
    }
    case DomainKind::polar_star: {
      const double r = star_r(d, t, 0);
      const double r1 = star_r(d, t, 1);
      const double r2 = star_r(d, t, 2);
      p.x = r * ct;
      p.y = r * st;
      p.dx = r1 * ct - r * st;
      p.dy = r1 * st + r * ct;
      p.ddx = r2 * ct - 2.0 * r1 * st - r * ct;
      p.ddy = r2 * st + 2.0 * r1 * ct - r * st;
      break;
    }
  }
  return p;
}

double curvature(const DomainSpec& d, double t) {
  const CurvePoint p = eval_curve(d, t);
  const double speed2 = p.dx * p.dx + p.dy * p.dy;
  return (p.dx * p.ddy - p.dy * p.ddx) / (speed2 * std::sqrt(speed2));
}

double BoundaryQuadrature::total_length() const {
  double s = 0.0;
  for (const auto& q : samples) s += q.weight;
  return s;
}

BoundaryQuadrature boundary_quadrature(const DomainSpec& d, int n) {
  if (n < 16) throw std::invalid_argument("boundary_quadrature: n >= 16 required");
  validate(d);
  BoundaryQuadrature bq;
  bq.samples.resize(n);
  const double dt = kTwoPi / n;
  double scale = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t = dt * i;
    const CurvePoint p = eval_curve(d, t);
    const double speed = std::hypot(p.dx, p.dy);
    scale = std::max(scale, speed);
    if (speed < 1e-12 * std::max(1.0, scale))
      throw std::invalid_argument("boundary_quadrature: degenerate parametrization");
    BoundarySample& s = bq.samples[i];
    s.param = t;
    s.point = {p.x, p.y};
    s.tangent = {p.dx / speed, p.dy / speed};
    s.normal = {s.tangent[1], -s.tangent[0]};  // outward for CCW curves
    s.curvature = (p.dx * p.ddy - p.dy * p.ddx) / (speed * speed * speed);
    s.weight = speed * dt;
  }
  return bq;
}

bool contains(const DomainSpec& d, double x, double y) {
  switch (d.kind) {
    case DomainKind::disk:
      return x * x + y * y < d.radius * d.radius;
    case DomainKind::ellipse: {
      const double u = x / d.semi_axis_a, v = y / d.semi_axis_b;
      return u * u + v * v < 1.0;
    }
    case DomainKind::polar_star: {
      const double r = std::hypot(x, y);
      if (r == 0.0) return true;
      return r < star_r(d, std::atan2(y, x), 0);
    }
  }
  return false;
}

namespace {

// Golden-section minimization of f on [lo, hi].
double golden_min(const std::function<double(double)>& f, double lo, double hi,
                  double tol) {
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      b = x2; x2 = x1; f2 = f1;
      x1 = b - gr * (b - a);
      f1 = f(x1);
    } else {
      a = x1; x1 = x2; f1 = f2;
      x2 = a + gr * (b - a);
      f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}

// Distance from p to the boundary: dense-polyline minimum refined by a
// golden-section pass on the parameter around the best sample.
struct BoundaryDistance {
  const DomainSpec* domain;
  std::vector<double> px, py;  // dense boundary samples
  int n;

  explicit BoundaryDistance(const DomainSpec& d, int samples = 2048)
      : domain(&d), n(samples) {
    px.resize(n);
    py.resize(n);
    for (int i = 0; i < n; ++i) {
      const CurvePoint c = eval_curve(d, kTwoPi * i / n);
      px[i] = c.x;
      py[i] = c.y;
    }
  }

  double operator()(double x, double y) const {
    int best = 0;
    double best2 = std::numeric_limits<double>::max();
    for (int i = 0; i < n; ++i) {
      const double dx = px[i] - x, dy = py[i] - y;
      const double d2 = dx * dx + dy * dy;
      if (d2 < best2) {
        best2 = d2;
        best = i;
      }
    }
    const double t0 = kTwoPi * (best - 1) / n;
    const double t1 = kTwoPi * (best + 1) / n;
    auto dist2 = [&](double t) {
      const CurvePoint c = eval_curve(*domain, t);
      const double dx = c.x - x, dy = c.y - y;
      return dx * dx + dy * dy;
    };
    const double t = golden_min(dist2, t0, t1, 1e-12);
    return std::sqrt(std::min(best2, dist2(t)));
  }
};

struct Vec2 {
  double x, y;
};

// Nelder-Mead on two variables; returns the best vertex.
Vec2 nelder_mead(const std::function<double(const Vec2&)>& f, Vec2 start,
                 double step, double tol, int max_iter = 400) {
  std::array<Vec2, 3> v{start, {start.x + step, start.y}, {start.x, start.y + step}};
  std::array<double, 3> fv{f(v[0]), f(v[1]), f(v[2])};
  for (int it = 0; it < max_iter; ++it) {
    // order ascending
    for (int i = 0; i < 2; ++i)
      for (int j = i + 1; j < 3; ++j)
        if (fv[j] < fv[i]) {
          std::swap(fv[i], fv[j]);
          std::swap(v[i], v[j]);
        }
    const double spread = std::max(
        std::hypot(v[1].x - v[0].x, v[1].y - v[0].y),
        std::hypot(v[2].x - v[0].x, v[2].y - v[0].y));
    if (spread < tol) break;
    const Vec2 c{0.5 * (v[0].x + v[1].x), 0.5 * (v[0].y + v[1].y)};
    const Vec2 xr{c.x + (c.x - v[2].x), c.y + (c.y - v[2].y)};
    const double fr = f(xr);
    if (fr < fv[0]) {
      const Vec2 xe{c.x + 2.0 * (c.x - v[2].x), c.y + 2.0 * (c.y - v[2].y)};
      const double fe = f(xe);
      if (fe < fr) {
        v[2] = xe; fv[2] = fe;
      } else {
        v[2] = xr; fv[2] = fr;
      }
    } else if (fr < fv[1]) {
      v[2] = xr;
      fv[2] = fr;
    } else {
      const Vec2 xc{c.x + 0.5 * (v[2].x - c.x), c.y + 0.5 * (v[2].y - c.y)};
      const double fc = f(xc);
      if (fc < fv[2]) {
        v[2] = xc;
        fv[2] = fc;
      } else {  // shrink
        for (int i = 1; i < 3; ++i) {
          v[i] = {v[0].x + 0.5 * (v[i].x - v[0].x), v[0].y + 0.5 * (v[i].y - v[0].y)};
          fv[i] = f(v[i]);
        }
      }
    }
  }
  int best = 0;
  for (int i = 1; i < 3; ++i)
    if (fv[i] < fv[best]) best = i;
  return v[best];
}

}  // namespace

GeometricSummary geometric_summary(const DomainSpec& d) {
  validate(d);
  GeometricSummary g{};

  // Adaptive doubling of the periodic trapezoid rule until the perimeter
  // settles to 1e-10 relative.
  int n = 256;
  double perimeter = boundary_quadrature(d, n).total_length();
  for (; n <= (1 << 16); ) {
    n *= 2;
    const double next = boundary_quadrature(d, n).total_length();
    const double change = std::abs(next - perimeter) / std::max(next, 1e-300);
    perimeter = next;
    if (change < 1e-10) break;
  }
  g.perimeter = perimeter;

  // Area via Green's theorem on the same rule.
  double area = 0.0;
  const double dt = kTwoPi / n;
  for (int i = 0; i < n; ++i) {
    const CurvePoint p = eval_curve(d, dt * i);
    area += 0.5 * (p.x * p.dy - p.y * p.dx) * dt;
  }
  if (!(area > 0.0))
    throw std::invalid_argument("geometric_summary: non-positive area, domain rejected");
  g.area = area;

  // Minimum signed curvature: sampled argmin plus golden-section refinement.
  {
    const int m = 4096;
    int best = 0;
    double kmin = std::numeric_limits<double>::max();
    for (int i = 0; i < m; ++i) {
      const double k = curvature(d, kTwoPi * i / m);
      if (k < kmin) {
        kmin = k;
        best = i;
      }
    }
    const double lo = kTwoPi * (best - 1) / m;
    const double hi = kTwoPi * (best + 1) / m;
    const double t = golden_min([&](double s) { return curvature(d, s); }, lo, hi, 1e-12);
    g.kappa_min = std::min(kmin, curvature(d, t));
  }

  // Inradius: maximize signed distance to the boundary over a polar seed
  // grid, then refine with Nelder-Mead.
  {
    const BoundaryDistance dist(d);
    auto signed_dist = [&](const Vec2& p) {
      const double s = dist(p.x, p.y);
      return contains(d, p.x, p.y) ? s : -s;
    };
    Vec2 seed{0.0, 0.0};
    double best = signed_dist(seed);
    const int n_phi = 48;
    for (int i = 0; i < n_phi; ++i) {
      const double phi = kTwoPi * i / n_phi;
      const CurvePoint b = eval_curve(d, phi);
      for (double f : {0.25, 0.5, 0.75}) {
        const Vec2 p{f * b.x, f * b.y};
        const double s = signed_dist(p);
        if (s > best) {
          best = s;
          seed = p;
        }
      }
    }
    const double tol = 1e-8 * std::sqrt(area);
    const Vec2 center = nelder_mead([&](const Vec2& p) { return -signed_dist(p); },
                                    seed, 0.1 * std::sqrt(area), tol);
    g.inradius = signed_dist(center);
    g.inradius_tol = tol;
  }
  return g;
}

namespace {

using nlohmann::json;

double get_positive(const json& j, const char* key) {
  if (!j.contains(key))
    throw std::invalid_argument(std::string("domain config: missing field '") + key + "'");
  if (!j.at(key).is_number())
    throw std::invalid_argument(std::string("domain config: field '") + key + "' must be a number");
  return j.at(key).get<double>();
}

std::vector<double> get_array(const json& j, const char* key) {
  if (!j.contains(key)) return {};
  const auto& a = j.at(key);
  if (!a.is_array())
    throw std::invalid_argument(std::string("domain config: field '") + key + "' must be an array");
  std::vector<double> v;
  for (const auto& e : a) {
    if (!e.is_number())
      throw std::invalid_argument(std::string("domain config: field '") + key +
                                  "' must contain numbers");
    v.push_back(e.get<double>());
  }
  return v;
}

void reject_unknown(const json& j, std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* a : allowed)
      if (key == a) ok = true;
    if (!ok)
      throw std::invalid_argument("domain config: unknown field '" + key + "'");
  }
}

}  // namespace

DomainSpec parse_domain_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("domain config: invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
    throw std::invalid_argument("domain config: requires a string field 'kind'");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "disk") {
    reject_unknown(j, {"kind", "radius"});
    return DomainSpec::disk(get_positive(j, "radius"));
  }
  if (kind == "ellipse") {
    reject_unknown(j, {"kind", "semi_axis_a", "semi_axis_b"});
    return DomainSpec::ellipse(get_positive(j, "semi_axis_a"), get_positive(j, "semi_axis_b"));
  }
  if (kind == "polar_star") {
    reject_unknown(j, {"kind", "r0", "cos_coeffs", "sin_coeffs"});
    return DomainSpec::polar_star(get_positive(j, "r0"), get_array(j, "cos_coeffs"),
                                  get_array(j, "sin_coeffs"));
  }
  throw std::invalid_argument("domain config: kind must be disk, ellipse, or polar_star");
}

DomainSpec load_domain_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("domain config: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_domain_config(ss.str());
}

std::string domain_config_json(const DomainSpec& d) {
  json j;
  switch (d.kind) {
    case DomainKind::disk:
      j = {{"kind", "disk"}, {"radius", d.radius}};
      break;
    case DomainKind::ellipse:
      j = {{"kind", "ellipse"}, {"semi_axis_a", d.semi_axis_a}, {"semi_axis_b", d.semi_axis_b}};
      break;
    case DomainKind::polar_star:
      j = {{"kind", "polar_star"},
           {"r0", d.r0},
           {"cos_coeffs", d.cos_coeffs},
           {"sin_coeffs", d.sin_coeffs}};
      break;
  }
  return j.dump(2);
}

}  // namespace qdrobin
