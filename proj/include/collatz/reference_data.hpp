#pragma once

// Known census rows used by the verify command and the acceptance suite.
// Lengths 1..14 carry no excess (totals are the Fibonacci numbers); the
// excess regime starts at length 15.

#include <array>

#include "collatz/census.hpp"

namespace collatz {

inline constexpr std::array<CensusRow, 32> kKnownCensus{{
    {1, 1, 0},
    {2, 1, 0},
    {3, 2, 0},
    {4, 3, 0},
    {5, 5, 0},
    {6, 8, 0},
    {7, 13, 0},
    {8, 21, 0},
    {9, 34, 0},
    {10, 55, 0},
    {11, 89, 0},
    {12, 144, 0},
    {13, 233, 0},
    {14, 377, 0},
    {15, 611, 1},
    {16, 989, 2},
    {17, 1600, 3},
    {18, 2587, 3},
    {19, 4185, 4},
    {20, 6771, 6},
    {21, 10953, 7},
    {22, 17720, 9},
    {23, 28669, 12},
    {24, 46383, 15},
    {25, 75044, 19},
    {26, 121417, 24},
    {27, 196448, 30},
    {28, 317850, 39},
    {29, 514278, 49},
    {30, 832101, 61},
    {31, 1346346, 77},
    {32, 2178405, 96},
}};

}  // namespace collatz
