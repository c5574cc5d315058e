// Copyright 2026 The wbal Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef WBAL_ERROR_HPP_
#define WBAL_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace wbal {

// Every failure raised by the library carries one of these codes. The CLI maps
// them onto exit statuses, tests match on them.
enum class Errc {
  InvalidArgument,
  ParseError,
  // planar
  NonSimple,
  Degenerate,
  IndexOutOfRange,
  ZeroScale,
  CenterOutside,
  NoIntersection,
  // weight balancing
  Infeasible,
  OriginOutside,
  NoCrossing,
  Overflow,
  // surfaces
  OpenSurface,
  NonPlanarFace,
  OriginOnBoundary,
  Disconnected,
  SubdivisionLimit,
  DegenerateSection,
  NoLoopContainsOrigin,
  // tripodal
  BadFrame,
  SearchExhausted,
  NotFound,
  // polytopes
  Unbounded,
  EmptyInterior,
  DisconnectedSkeleton,
  DegenerateSpan,
  PerturbationFailed,
  WalkFailed,
  UnsupportedDimension,
};

const char* to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& detail = {});

}  // namespace wbal

#endif  // WBAL_ERROR_HPP_
