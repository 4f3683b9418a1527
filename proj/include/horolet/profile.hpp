#pragma once

#include <cmath>
#include <functional>
#include <string>

#include "horolet/quadrature.hpp"
#include "horolet/types.hpp"

namespace horolet {

struct Profile1D {
  std::string tag;
  std::function<Complex(double)> eval;
  // the ^sharp transform b -> omega with kernel e^{-i b omega}
  std::function<Complex(double)> spectrum;
  bool analytic_spectrum = false;
  // true when the raw spectrum exists only distributionally (relu, step) or
  // has a pole at omega = 0 (tanh); such spectra are never integrated
  // against anything that does not vanish fast enough at 0
  bool distributional = false;
  // uniform lookup table mirroring eval, zero outside its range; hot kernels
  // use it to bypass the std::function dispatch, so a profile that sets it
  // must keep it consistent with eval
  bool has_table = false;
  double table_lo = 0.0, table_dx = 1.0;
  VecD table_re, table_im;
  Complex operator()(double b) const { return eval(b); }
};

inline Complex table_eval(const Profile1D& p, double t) {
  double s = (t - p.table_lo) / p.table_dx;
  if (s < 0.0) return Complex(0.0);
  int n = static_cast<int>(p.table_re.size());
  int i = static_cast<int>(s);
  if (i >= n - 1) return Complex(0.0);
  double w = s - i;
  return Complex(p.table_re[i] + w * (p.table_re[i + 1] - p.table_re[i]),
                 p.table_im[i] + w * (p.table_im[i + 1] - p.table_im[i]));
}

inline double hermite_he(int n, double b) {
  double h0 = 1.0, h1 = b;
  if (n == 0) return h0;
  if (n == 1) return h1;
  for (int k = 1; k < n; ++k) {
    double h2 = b * h1 - k * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

inline Profile1D gaussian_profile() {
  Profile1D p;
  p.tag = "gaussian";
  p.eval = [](double b) { return Complex(std::exp(-0.5 * b * b), 0.0); };
  p.spectrum = [](double w) {
    return Complex(std::sqrt(2.0 * M_PI) * std::exp(-0.5 * w * w), 0.0);
  };
  p.analytic_spectrum = true;
  return p;
}

// k-th derivative of the unit Gaussian; spectrum (i w)^k sqrt(2 pi) e^{-w^2/2}
inline Profile1D gaussian_deriv_profile(int k) {
  if (k < 1) throw ConfigError("gaussian_deriv: k >= 1");
  Profile1D p;
  p.tag = "gaussian_deriv" + std::to_string(k);
  p.eval = [k](double b) {
    double s = (k % 2 == 0) ? 1.0 : -1.0;
    return Complex(s * hermite_he(k, b) * std::exp(-0.5 * b * b), 0.0);
  };
  p.spectrum = [k](double w) {
    Complex iw(0.0, w);
    return std::pow(iw, k) * std::sqrt(2.0 * M_PI) * std::exp(-0.5 * w * w);
  };
  p.analytic_spectrum = true;
  return p;
}

inline Profile1D tanh_profile() {
  Profile1D p;
  p.tag = "tanh";
  p.eval = [](double b) { return Complex(std::tanh(b), 0.0); };
  // principal-value transform; simple pole -2i/w at the origin
  p.spectrum = [](double w) {
    return Complex(0.0, -M_PI / std::sinh(0.5 * M_PI * w));
  };
  p.analytic_spectrum = true;
  p.distributional = true;
  return p;
}

inline Profile1D relu_profile() {
  Profile1D p;
  p.tag = "relu";
  p.eval = [](double b) { return Complex(b > 0.0 ? b : 0.0, 0.0); };
  p.spectrum = [](double) -> Complex {
    throw NumericalError("relu: raw spectrum is distributional, apply a finite difference first");
  };
  p.distributional = true;
  return p;
}

inline Profile1D step_profile() {
  Profile1D p;
  p.tag = "step";
  p.eval = [](double b) { return Complex(b >= 0.0 ? 1.0 : 0.0, 0.0); };
  p.spectrum = [](double) -> Complex {
    throw NumericalError("step: raw spectrum is distributional, apply a finite difference first");
  };
  p.distributional = true;
  return p;
}

inline Profile1D shifted_profile(const Profile1D& p, double c) {
  Profile1D q;
  q.tag = p.tag + "_shift" + std::to_string(c);
  auto pe = p.eval;
  q.eval = [pe, c](double b) { return pe(b - c); };
  if (p.analytic_spectrum) {
    auto ps = p.spectrum;
    q.spectrum = [ps, c](double w) {
      return ps(w) * std::exp(Complex(0.0, -w * c));
    };
    q.analytic_spectrum = true;
  } else {
    q.spectrum = p.spectrum;
  }
  q.distributional = p.distributional;
  return q;
}

inline Profile1D mix_profiles(const Profile1D& p, const Profile1D& q, double cq,
                              const std::string& tag) {
  Profile1D r;
  r.tag = tag;
  auto pe = p.eval, qe = q.eval;
  r.eval = [pe, qe, cq](double b) { return pe(b) + cq * qe(b); };
  if (p.analytic_spectrum && q.analytic_spectrum) {
    auto ps = p.spectrum, qs = q.spectrum;
    r.spectrum = [ps, qs, cq](double w) { return ps(w) + cq * qs(w); };
    r.analytic_spectrum = true;
  }
  r.distributional = p.distributional || q.distributional;
  return r;
}

inline double binomial(int n, int k) {
  double v = 1.0;
  for (int i = 1; i <= k; ++i) v = v * (n - k + i) / i;
  return v;
}

// forward difference sum_j (-1)^{k-j} C(k,j) sigma(t + j theta)
inline Profile1D finite_difference(const Profile1D& sigma, int k, double theta) {
  if (k < 0) throw ConfigError("finite_difference: k >= 0");
  if (k == 0) return sigma;
  if (theta <= 0) throw ConfigError("finite_difference: theta > 0");
  Profile1D p;
  p.tag = sigma.tag + "_fd" + std::to_string(k);
  auto se = sigma.eval;
  p.eval = [se, k, theta](double t) {
    Complex acc = 0.0;
    for (int j = 0; j <= k; ++j) {
      double c = binomial(k, j) * (((k - j) % 2 == 0) ? 1.0 : -1.0);
      acc += c * se(t + j * theta);
    }
    return acc;
  };
  bool compact_after_fd =
      (sigma.tag == "relu" && k >= 2) || (sigma.tag == "step" && k >= 1);
  if (sigma.analytic_spectrum && !sigma.distributional) {
    auto ss = sigma.spectrum;
    p.spectrum = [ss, k, theta](double w) {
      Complex f = std::exp(Complex(0.0, w * theta)) - 1.0;
      return std::pow(f, k) * ss(w);
    };
    p.analytic_spectrum = true;
  } else if (compact_after_fd) {
    // the difference collapses to a bounded compactly supported function;
    // integrate it directly
    auto pe = p.eval;
    double lo = -k * theta - 1.0, hi = 1.0 + theta;
    p.spectrum = [pe, lo, hi](double w) {
      Grid1 g = gauss_legendre(512, lo, hi);
      Complex acc = 0.0;
      for (int i = 0; i < g.size(); ++i)
        acc += g.weights[i] * pe(g.nodes[i]) *
               std::exp(Complex(0.0, -w * g.nodes[i]));
      return acc;
    };
  } else {
    p.spectrum = [](double) -> Complex {
      throw NumericalError("finite_difference: spectrum still distributional at this order");
    };
    p.distributional = true;
  }
  return p;
}

// profile with spectrum |w|^r rho0^sharp(w); evaluated from a dense inverse
// transform table with linear interpolation and zero extension
inline Profile1D fractional_laplacian(const Profile1D& rho0, double r,
                                      double b_max_table = 40.0, int n_table = 32769,
                                      double omega_max = 16.0, int n_omega = 1600) {
  if (r <= 0) throw ConfigError("fractional_laplacian: r > 0 required");
  if (!rho0.analytic_spectrum || rho0.distributional)
    throw ConfigError("fractional_laplacian: rho0 needs an integrable spectrum");
  auto rs = rho0.spectrum;
  Grid1 og = gauss_legendre(n_omega, -omega_max, omega_max);
  VecD bs(n_table), re(n_table), im(n_table);
  for (int i = 0; i < n_table; ++i)
    bs[i] = -b_max_table + 2.0 * b_max_table * i / (n_table - 1);
  VecC spec(og.size());
  for (int j = 0; j < og.size(); ++j)
    spec[j] = std::pow(std::abs(og.nodes[j]), r) * rs(og.nodes[j]) * og.weights[j];
  // one phasor recurrence per frequency: the uniform table spacing turns each
  // e^{i b omega} into a single complex multiply; the phase drift over the
  // table length stays below 1e-11
  VecC acc = VecC::Zero(n_table);
  for (int j = 0; j < og.size(); ++j) {
    Complex ph = std::exp(Complex(0.0, bs[0] * og.nodes[j]));
    Complex stepp = std::exp(Complex(0.0, (bs[1] - bs[0]) * og.nodes[j]));
    for (int i = 0; i < n_table; ++i) {
      acc[i] += spec[j] * ph;
      ph *= stepp;
    }
  }
  for (int i = 0; i < n_table; ++i) {
    re[i] = acc[i].real() / (2.0 * M_PI);
    im[i] = acc[i].imag() / (2.0 * M_PI);
  }
  Profile1D p;
  p.tag = rho0.tag + "_lap" + std::to_string(r);
  p.has_table = true;
  p.table_lo = bs[0];
  p.table_dx = bs[1] - bs[0];
  p.table_re = re;
  p.table_im = im;
  double lo = p.table_lo, dx = p.table_dx;
  p.eval = [lo, dx, re, im](double b) {
    double s = (b - lo) / dx;
    if (s < 0.0) return Complex(0.0);
    int n = static_cast<int>(re.size());
    int i = static_cast<int>(s);
    if (i >= n - 1) return Complex(0.0);
    double w = s - i;
    return Complex(re[i] + w * (re[i + 1] - re[i]),
                   im[i] + w * (im[i + 1] - im[i]));
  };
  p.spectrum = [rs, r](double w) { return std::pow(std::abs(w), r) * rs(w); };
  p.analytic_spectrum = true;
  return p;
}

// moment ratio that cancels the sigma-weighted zero-order pairing of rho;
// with it the parameter-domain hole |a| < a_min contributes at cubic rather
// than linear order in a_min
inline double pair_tuning_constant(const std::string& sigma_kind, int k_lo, int k_hi) {
  Grid1 g = gauss_legendre(1024, 0.0, 40.0);
  double num = 0.0, den = 0.0;
  for (int i = 0; i < g.size(); ++i) {
    double w = g.nodes[i];
    double weight = sigma_kind == "tanh" ? 1.0 / std::sinh(0.5 * M_PI * w)
                                         : std::exp(-0.5 * w * w);
    double base = weight * std::exp(-0.5 * w * w) * w;
    num += g.weights[i] * base * std::pow(w, k_lo);
    den += g.weights[i] * base * std::pow(w, k_hi);
  }
  return num / den;
}

// rho0 families used by the shipped configs
inline Profile1D make_rho0(const std::string& kind, double shift = 0.0) {
  if (kind == "gaussian") {
    Profile1D p = gaussian_profile();
    return shift != 0.0 ? shifted_profile(p, shift) : p;
  }
  if (kind.rfind("gaussian_deriv", 0) == 0) {
    int k = std::stoi(kind.substr(14));
    Profile1D p = gaussian_deriv_profile(k);
    return shift != 0.0 ? shifted_profile(p, shift) : p;
  }
  if (kind == "odd_pair") {
    double c = pair_tuning_constant("tanh", 3, 5);
    return mix_profiles(gaussian_deriv_profile(3), gaussian_deriv_profile(5), c,
                        "odd_pair");
  }
  if (kind == "even_pair") {
    double c = pair_tuning_constant("gaussian", 2, 4);
    return mix_profiles(gaussian_deriv_profile(2), gaussian_deriv_profile(4), c,
                        "even_pair");
  }
  throw ConfigError("unknown rho0 kind: " + kind);
}

inline Profile1D make_sigma(const std::string& kind, int fd_order = 0,
                            double fd_step = 1.0) {
  Profile1D base;
  if (kind == "tanh")
    base = tanh_profile();
  else if (kind == "gaussian")
    base = gaussian_profile();
  else if (kind == "relu")
    base = relu_profile();
  else if (kind == "step")
    base = step_profile();
  else
    throw ConfigError("unknown sigma kind: " + kind);
  if (fd_order > 0) return finite_difference(base, fd_order, fd_step);
  return base;
}

}  // namespace horolet
