#pragma once

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "monotone/errors.hpp"

namespace monotone {

// Real interval with optionally infinite endpoints and per-endpoint
// closedness. Used both as a function domain and as the node-sampling range
// of a certification sweep. Invariant: lower < upper.
struct Interval {
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();
  bool closed_lower = false;
  bool closed_upper = false;

  static Interval closed(double lo, double hi) { return make(lo, hi, true, true); }
  static Interval half_open(double lo, double hi) { return make(lo, hi, true, false); }
  static Interval open(double lo, double hi) { return make(lo, hi, false, false); }
  static Interval real_line() { return Interval{}; }

  static Interval make(double lo, double hi, bool cl, bool cu) {
    if (!(lo < hi)) throw DomainError("interval requires lower < upper");
    Interval I;
    I.lower = lo;
    I.upper = hi;
    I.closed_lower = cl && std::isfinite(lo);
    I.closed_upper = cu && std::isfinite(hi);
    return I;
  }

  bool contains(double t) const {
    if (std::isnan(t)) return false;
    bool above = closed_lower ? (t >= lower) : (t > lower);
    bool below = closed_upper ? (t <= upper) : (t < upper);
    return above && below;
  }

  // I2 subset of this, endpoint openness included.
  bool contains_interval(const Interval& I2) const {
    bool lo_ok = I2.lower > lower || (I2.lower == lower && (closed_lower || !I2.closed_lower));
    bool hi_ok = I2.upper < upper || (I2.upper == upper && (closed_upper || !I2.closed_upper));
    return lo_ok && hi_ok;
  }

  bool bounded() const { return std::isfinite(lower) && std::isfinite(upper); }

  double width() const { return upper - lower; }

  // Bounded sub-interval used when sampling over an unbounded interval.
  // Anchored at whichever endpoint is finite; centered at 0 when neither is.
  Interval sampling_window(double width) const {
    if (bounded()) return *this;
    if (std::isfinite(lower)) return make(lower, lower + width, closed_lower, false);
    if (std::isfinite(upper)) return make(upper - width, upper, false, closed_upper);
    return make(-width / 2, width / 2, false, false);
  }

  std::string str() const {
    auto side = [](double v) -> std::string {
      if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
      std::ostringstream os;
      os.precision(17);
      os << v;
      return os.str();
    };
    return side(lower) + ":" + side(upper);
  }

  // Parses "lo:hi" with "inf"/"-inf" allowed. Finite endpoints are closed:
  // "0:10" is [0, 10].
  static Interval parse(const std::string& s) {
    auto colon = s.find(':');
    if (colon == std::string::npos) throw ParseError("interval must be lo:hi, got '" + s + "'");
    auto piece = [&](const std::string& p) -> double {
      if (p == "inf" || p == "+inf") return std::numeric_limits<double>::infinity();
      if (p == "-inf") return -std::numeric_limits<double>::infinity();
      try {
        std::size_t used = 0;
        double v = std::stod(p, &used);
        if (used != p.size()) throw ParseError("bad interval endpoint '" + p + "'");
        return v;
      } catch (const std::invalid_argument&) {
        throw ParseError("bad interval endpoint '" + p + "'");
      } catch (const std::out_of_range&) {
        throw ParseError("interval endpoint out of range '" + p + "'");
      }
    };
    double lo = piece(s.substr(0, colon));
    double hi = piece(s.substr(colon + 1));
    return make(lo, hi, true, true);
  }
};

}
