// Copyright 2026 The quatpath Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace quatpath {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Input violates a documented precondition (bad prime, bad residue, ...).
class InvalidInput : public Error {
  public:
    using Error::Error;
};

/// Lattice generators do not span a rank-4 lattice.
class RankDeficient : public Error {
  public:
    RankDeficient() : Error("generators do not span a full-rank lattice") {}
};

/// Index of a lattice in its order is not a perfect square.
class NotAnIdeal : public Error {
  public:
    using Error::Error;
};

class ElementNotInIdeal : public Error {
  public:
    ElementNotInIdeal() : Error("element does not lie in the ideal") {}
};

/// A randomized search ran out of its attempt budget.
class SearchExhausted : public Error {
  public:
    using Error::Error;
};

/// An internal consistency check failed. Always a bug, never bad input.
class VerificationFailed : public Error {
  public:
    using Error::Error;
};

class DegenerateIdeal : public Error {
  public:
    using Error::Error;
};

/// The ideal (or O*gamma) is fixed by the (R/NR)^* action, so no unit of
/// (R/NR)^*[j] can move one onto the other.
class FixedPointObstruction : public Error {
  public:
    FixedPointObstruction() : Error("ideal class mod N is a fixed point of the (R/NR)^* action") {}
};

class ExponentCapExceeded : public Error {
  public:
    using Error::Error;
};

class ScheduleExhausted : public Error {
  public:
    using Error::Error;
};

/// A residue precondition on the inputs does not hold.
class InvalidResidue : public InvalidInput {
  public:
    using InvalidInput::InvalidInput;
};

/// A pipeline stage failed after its global retry budget.
class StageFailed : public Error {
  public:
    StageFailed(std::string stage, long attempts, const std::string &why)
        : Error("stage '" + stage + "' failed after " + std::to_string(attempts) +
                " attempts: " + why),
          stage_(std::move(stage)), attempts_(attempts)
    {
    }

    const std::string &stage() const { return stage_; }
    long attempts() const { return attempts_; }

  private:
    std::string stage_;
    long attempts_;
};

} // namespace quatpath
