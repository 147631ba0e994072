#pragma once

namespace zeeman {

//! si(x) = Si(x) - pi/2. Defined for all finite x; si(x) + si(-x) = -pi.
double sine_integral_si(double x);

//! Si(x) = int_0^x sin(t)/t dt.
double sine_integral_Si(double x);

//! Ci(x) = gamma + ln x + int_0^x (cos t - 1)/t dt, x > 0.
double cosine_integral_Ci(double x);

//! Modified Bessel function of the second kind, order 1, x > 0.
double bessel_K1(double x);

//! Crossover points between the series and the large-argument branches.
inline constexpr double kSiCiSeriesLimit = 4.0;
inline constexpr double kK1SeriesLimit = 2.0;

} // namespace zeeman
