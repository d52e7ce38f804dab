#pragma once

#include <stdexcept>
#include <string>

namespace collatz {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// trace construction
struct PowerOfTwoStart : Error { using Error::Error; };
struct GuardExceeded : Error { using Error::Error; };
struct DuplicateElements : Error { using Error::Error; };
struct NotCollatzPattern : Error { using Error::Error; };

// type grammar
struct BadTypeLetter : Error { using Error::Error; };
struct ConsecutiveUps : Error { using Error::Error; };
struct DoesNotEndInD : Error { using Error::Error; };
struct InvalidExtension : Error { using Error::Error; };

// witness arithmetic
struct NotAUnit : Error { using Error::Error; };
struct NotAWitness : Error { using Error::Error; };
struct NoValidWitnessWithinCap : Error { using Error::Error; };

// line geometry
struct SameSlope : Error { using Error::Error; };
struct FamilyTooSmall : Error { using Error::Error; };
struct DegenerateWitness : Error { using Error::Error; };

// persistence
struct CheckpointCorrupt : Error { using Error::Error; };
struct UnwritableOutput : Error { using Error::Error; };

}  // namespace collatz
