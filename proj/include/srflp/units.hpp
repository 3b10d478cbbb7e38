#ifndef SRFLP_UNITS_HPP
#define SRFLP_UNITS_HPP

#include <cstdint>
#include <cstdlib>
#include <string>

namespace srflp {

// Objective values are half-integral (facility centers sit at half-lengths),
// so we store 2*F as a plain integer and stay exact everywhere. Display
// divides by two, e.g. twice == 287 renders as "143.5".
class HalfUnits {
 public:
  constexpr HalfUnits() = default;

  static constexpr HalfUnits from_twice(std::int64_t t) { return HalfUnits(t); }
  static constexpr HalfUnits from_whole(std::int64_t u) { return HalfUnits(2 * u); }

  constexpr std::int64_t twice() const { return twice_; }
  constexpr double units() const { return static_cast<double>(twice_) / 2.0; }

  // One-decimal rendering: "143.5", "144.0", "-143.5".
  std::string str() const {
    std::int64_t a = twice_ < 0 ? -twice_ : twice_;
    std::string s = (twice_ < 0 ? "-" : "");
    s += std::to_string(a / 2);
    s += (a % 2 != 0) ? ".5" : ".0";
    return s;
  }

  constexpr HalfUnits operator+(HalfUnits o) const { return HalfUnits(twice_ + o.twice_); }
  constexpr HalfUnits operator-(HalfUnits o) const { return HalfUnits(twice_ - o.twice_); }
  constexpr HalfUnits operator-() const { return HalfUnits(-twice_); }
  constexpr HalfUnits& operator+=(HalfUnits o) { twice_ += o.twice_; return *this; }
  constexpr HalfUnits& operator-=(HalfUnits o) { twice_ -= o.twice_; return *this; }

  friend constexpr bool operator==(HalfUnits a, HalfUnits b) { return a.twice_ == b.twice_; }
  friend constexpr bool operator!=(HalfUnits a, HalfUnits b) { return a.twice_ != b.twice_; }
  friend constexpr bool operator<(HalfUnits a, HalfUnits b) { return a.twice_ < b.twice_; }
  friend constexpr bool operator<=(HalfUnits a, HalfUnits b) { return a.twice_ <= b.twice_; }
  friend constexpr bool operator>(HalfUnits a, HalfUnits b) { return a.twice_ > b.twice_; }
  friend constexpr bool operator>=(HalfUnits a, HalfUnits b) { return a.twice_ >= b.twice_; }

 private:
  constexpr explicit HalfUnits(std::int64_t t) : twice_(t) {}
  std::int64_t twice_ = 0;
};

}  // namespace srflp

#endif  // SRFLP_UNITS_HPP
