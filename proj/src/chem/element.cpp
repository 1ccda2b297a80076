//
// Project aisens - Copyright 2026 The aisens Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "aisens/chem/element.hpp"

#include <array>
#include <stdexcept>
#include <string>

namespace aisens::chem {
namespace {

constexpr std::optional<double> kNoWeight = std::nullopt;

// CIAAW standard atomic weights, abridged to five significant figures.
// Elements without a standard weight carry none.
constexpr std::array<Element, 119> kTable = { {
    { 0, "*", kNoWeight },
    { 1, "H", 1.008 },
    { 2, "He", 4.0026 },
    { 3, "Li", 6.94 },
    { 4, "Be", 9.0122 },
    { 5, "B", 10.81 },
    { 6, "C", 12.011 },
    { 7, "N", 14.007 },
    { 8, "O", 15.999 },
    { 9, "F", 18.998 },
    { 10, "Ne", 20.180 },
    { 11, "Na", 22.990 },
    { 12, "Mg", 24.305 },
    { 13, "Al", 26.982 },
    { 14, "Si", 28.085 },
    { 15, "P", 30.974 },
    { 16, "S", 32.06 },
    { 17, "Cl", 35.45 },
    { 18, "Ar", 39.95 },
    { 19, "K", 39.098 },
    { 20, "Ca", 40.078 },
    { 21, "Sc", 44.956 },
    { 22, "Ti", 47.867 },
    { 23, "V", 50.942 },
    { 24, "Cr", 51.996 },
    { 25, "Mn", 54.938 },
    { 26, "Fe", 55.845 },
    { 27, "Co", 58.933 },
    { 28, "Ni", 58.693 },
    { 29, "Cu", 63.546 },
    { 30, "Zn", 65.38 },
    { 31, "Ga", 69.723 },
    { 32, "Ge", 72.630 },
    { 33, "As", 74.922 },
    { 34, "Se", 78.971 },
    { 35, "Br", 79.904 },
    { 36, "Kr", 83.798 },
    { 37, "Rb", 85.468 },
    { 38, "Sr", 87.62 },
    { 39, "Y", 88.906 },
    { 40, "Zr", 91.224 },
    { 41, "Nb", 92.906 },
    { 42, "Mo", 95.95 },
    { 43, "Tc", kNoWeight },
    { 44, "Ru", 101.07 },
    { 45, "Rh", 102.91 },
    { 46, "Pd", 106.42 },
    { 47, "Ag", 107.87 },
    { 48, "Cd", 112.41 },
    { 49, "In", 114.82 },
    { 50, "Sn", 118.71 },
    { 51, "Sb", 121.76 },
    { 52, "Te", 127.60 },
    { 53, "I", 126.90 },
    { 54, "Xe", 131.29 },
    { 55, "Cs", 132.91 },
    { 56, "Ba", 137.33 },
    { 57, "La", 138.91 },
    { 58, "Ce", 140.12 },
    { 59, "Pr", 140.91 },
    { 60, "Nd", 144.24 },
    { 61, "Pm", kNoWeight },
    { 62, "Sm", 150.36 },
    { 63, "Eu", 151.96 },
    { 64, "Gd", 157.25 },
    { 65, "Tb", 158.93 },
    { 66, "Dy", 162.50 },
    { 67, "Ho", 164.93 },
    { 68, "Er", 167.26 },
    { 69, "Tm", 168.93 },
    { 70, "Yb", 173.05 },
    { 71, "Lu", 174.97 },
    { 72, "Hf", 178.49 },
    { 73, "Ta", 180.95 },
    { 74, "W", 183.84 },
    { 75, "Re", 186.21 },
    { 76, "Os", 190.23 },
    { 77, "Ir", 192.22 },
    { 78, "Pt", 195.08 },
    { 79, "Au", 196.97 },
    { 80, "Hg", 200.59 },
    { 81, "Tl", 204.38 },
    { 82, "Pb", 207.2 },
    { 83, "Bi", 208.98 },
    { 84, "Po", kNoWeight },
    { 85, "At", kNoWeight },
    { 86, "Rn", kNoWeight },
    { 87, "Fr", kNoWeight },
    { 88, "Ra", kNoWeight },
    { 89, "Ac", kNoWeight },
    { 90, "Th", 232.04 },
    { 91, "Pa", 231.04 },
    { 92, "U", 238.03 },
    { 93, "Np", kNoWeight },
    { 94, "Pu", kNoWeight },
    { 95, "Am", kNoWeight },
    { 96, "Cm", kNoWeight },
    { 97, "Bk", kNoWeight },
    { 98, "Cf", kNoWeight },
    { 99, "Es", kNoWeight },
    { 100, "Fm", kNoWeight },
    { 101, "Md", kNoWeight },
    { 102, "No", kNoWeight },
    { 103, "Lr", kNoWeight },
    { 104, "Rf", kNoWeight },
    { 105, "Db", kNoWeight },
    { 106, "Sg", kNoWeight },
    { 107, "Bh", kNoWeight },
    { 108, "Hs", kNoWeight },
    { 109, "Mt", kNoWeight },
    { 110, "Ds", kNoWeight },
    { 111, "Rg", kNoWeight },
    { 112, "Cn", kNoWeight },
    { 113, "Nh", kNoWeight },
    { 114, "Fl", kNoWeight },
    { 115, "Mc", kNoWeight },
    { 116, "Lv", kNoWeight },
    { 117, "Ts", kNoWeight },
    { 118, "Og", kNoWeight },
} };

constexpr std::array<int, 1> kValB = { 3 };
constexpr std::array<int, 1> kValC = { 4 };
constexpr std::array<int, 2> kValN = { 3, 5 };
constexpr std::array<int, 1> kValO = { 2 };
constexpr std::array<int, 2> kValP = { 3, 5 };
constexpr std::array<int, 3> kValS = { 2, 4, 6 };
constexpr std::array<int, 1> kValHalogen = { 1 };

}  // namespace

const Element *find_element(std::string_view symbol) noexcept {
  // The wildcard is not an element for our purposes.
  for (std::size_t i = 1; i < kTable.size(); ++i) {
    if (kTable[i].symbol == symbol)
      return &kTable[i];
  }
  return nullptr;
}

const Element &element_by_number(int atomic_number) {
  if (atomic_number < 1 || atomic_number >= static_cast<int>(kTable.size()))
    throw std::out_of_range("atomic number "
                            + std::to_string(atomic_number));
  return kTable[static_cast<std::size_t>(atomic_number)];
}

std::span<const int> default_valences(int atomic_number) noexcept {
  switch (atomic_number) {
  case 5:
    return kValB;
  case 6:
    return kValC;
  case 7:
    return kValN;
  case 8:
    return kValO;
  case 15:
    return kValP;
  case 16:
    return kValS;
  case 9:
  case 17:
  case 35:
  case 53:
    return kValHalogen;
  default:
    return {};
  }
}

bool is_organic_subset(int atomic_number) noexcept {
  return !default_valences(atomic_number).empty();
}

bool can_be_aromatic(int atomic_number) noexcept {
  switch (atomic_number) {
  case 5:
  case 6:
  case 7:
  case 8:
  case 15:
  case 16:
  case 33:
  case 34:
    return true;
  default:
    return false;
  }
}

}  // namespace aisens::chem
