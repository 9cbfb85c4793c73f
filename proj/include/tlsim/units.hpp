#ifndef TLSIM_UNITS_HPP
#define TLSIM_UNITS_HPP

namespace tlsim {

// Internal unit system: angular frequencies and rates in rad/us, time in us.
// Config files carry omega/2pi in MHz, so 1 MHz maps to 2*pi rad/us.
inline constexpr double two_pi = 6.283185307179586476925286766559;

inline constexpr double mhz_to_rad_us(double f_mhz) { return two_pi * f_mhz; }
inline constexpr double rad_us_to_mhz(double w) { return w / two_pi; }

}  // namespace tlsim

#endif
