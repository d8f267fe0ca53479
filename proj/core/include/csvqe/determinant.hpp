// Copyright 2026 The CSVQE Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>

namespace csvqe {

enum class Spin : std::uint8_t { alpha = 0, beta = 1 };

/// A spatial orbital paired with a spin label.  Spin-orbitals are ordered
/// globally as the alpha block (orbitals ascending) followed by the beta
/// block; this ordering fixes every fermionic sign in the code base.
struct SpinOrbital {
  int orbital = 0;
  Spin spin = Spin::alpha;

  /// Position in the global alpha-then-beta ordering.
  [[nodiscard]] constexpr int position() const noexcept {
    return orbital + (spin == Spin::beta ? 64 : 0);
  }
  friend constexpr auto operator<=>(const SpinOrbital& a, const SpinOrbital& b) noexcept {
    return a.position() <=> b.position();
  }
  friend constexpr bool operator==(const SpinOrbital& a, const SpinOrbital& b) noexcept {
    return a.orbital == b.orbital && a.spin == b.spin;
  }
};

/// Occupation of spatial orbitals by alpha/beta electrons as two bit masks;
/// bit p set means orbital p (0-based) holds an electron of that spin.
/// 64-bit masks cap the orbital count at 64.
struct Determinant {
  std::uint64_t alpha = 0;
  std::uint64_t beta = 0;

  [[nodiscard]] int n_alpha() const noexcept { return std::popcount(alpha); }
  [[nodiscard]] int n_beta() const noexcept { return std::popcount(beta); }
  [[nodiscard]] bool occupied(SpinOrbital so) const noexcept {
    const std::uint64_t mask = so.spin == Spin::alpha ? alpha : beta;
    return (mask >> so.orbital) & 1u;
  }
  // lexicographic in (alpha, beta)
  friend constexpr auto operator<=>(const Determinant&, const Determinant&) noexcept = default;
};

struct DeterminantHash {
  std::size_t operator()(const Determinant& d) const noexcept {
    auto mix = [](std::uint64_t v) {
      v ^= v >> 30; v *= 0xbf58476d1ce4e5b9ull;
      v ^= v >> 27; v *= 0x94d049bb133111ebull;
      v ^= v >> 31;
      return v;
    };
    const std::uint64_t h = mix(d.alpha);
    return static_cast<std::size_t>(h ^ (mix(d.beta) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2)));
  }
};

struct ExcitationResult {
  Determinant det;
  int sign = 1;
};

namespace detail {

// Occupied spin-orbitals strictly before `so` in the global ordering.
inline int occupied_below(const Determinant& d, SpinOrbital so) noexcept {
  const std::uint64_t below = (std::uint64_t{1} << so.orbital) - 1;
  if (so.spin == Spin::alpha) return std::popcount(d.alpha & below);
  return std::popcount(d.alpha) + std::popcount(d.beta & below);
}

inline bool annihilate(Determinant& d, SpinOrbital so, int& sign) noexcept {
  if (!d.occupied(so)) return false;  // Pauli
  if (occupied_below(d, so) & 1) sign = -sign;
  const std::uint64_t bit = std::uint64_t{1} << so.orbital;
  (so.spin == Spin::alpha ? d.alpha : d.beta) &= ~bit;
  return true;
}

inline bool create(Determinant& d, SpinOrbital so, int& sign) noexcept {
  if (d.occupied(so)) return false;  // Pauli
  if (occupied_below(d, so) & 1) sign = -sign;
  const std::uint64_t bit = std::uint64_t{1} << so.orbital;
  (so.spin == Spin::alpha ? d.alpha : d.beta) |= bit;
  return true;
}

}  // namespace detail

/// Apply the excitation a+_{p0} a+_{p1} a_{h1} a_{h0} (operators acting
/// right to left) for holes (h0, h1) and particles (p0, p1); singles use
/// one hole and one particle.  Returns the image determinant and the
/// fermionic sign, or nullopt if any operator is Pauli-blocked.
inline std::optional<ExcitationResult> apply_excitation(const Determinant& det,
                                                        std::span<const SpinOrbital> holes,
                                                        std::span<const SpinOrbital> particles) {
  Determinant d = det;
  int sign = 1;
  for (const SpinOrbital h : holes) {
    if (!detail::annihilate(d, h, sign)) return std::nullopt;
  }
  for (auto it = particles.rbegin(); it != particles.rend(); ++it) {
    if (!detail::create(d, *it, sign)) return std::nullopt;
  }
  return ExcitationResult{d, sign};
}

/// Sign of the excitation alone, or nullopt when inapplicable.
inline std::optional<int> excitation_sign(const Determinant& det,
                                          std::span<const SpinOrbital> holes,
                                          std::span<const SpinOrbital> particles) {
  const auto res = apply_excitation(det, holes, particles);
  if (!res) return std::nullopt;
  return res->sign;
}

/// Number of spin-orbital moves between two same-sector determinants.
inline int excitation_degree(const Determinant& a, const Determinant& b) noexcept {
  return (std::popcount(a.alpha ^ b.alpha) + std::popcount(a.beta ^ b.beta)) / 2;
}

}  // namespace csvqe
