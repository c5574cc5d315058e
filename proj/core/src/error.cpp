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

#include "wbal/error.hpp"

namespace wbal {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::ParseError: return "ParseError";
    case Errc::NonSimple: return "NonSimple";
    case Errc::Degenerate: return "Degenerate";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::ZeroScale: return "ZeroScale";
    case Errc::CenterOutside: return "CenterOutside";
    case Errc::NoIntersection: return "NoIntersection";
    case Errc::Infeasible: return "Infeasible";
    case Errc::OriginOutside: return "OriginOutside";
    case Errc::NoCrossing: return "NoCrossing";
    case Errc::Overflow: return "Overflow";
    case Errc::OpenSurface: return "OpenSurface";
    case Errc::NonPlanarFace: return "NonPlanarFace";
    case Errc::OriginOnBoundary: return "OriginOnBoundary";
    case Errc::Disconnected: return "Disconnected";
    case Errc::SubdivisionLimit: return "SubdivisionLimit";
    case Errc::DegenerateSection: return "DegenerateSection";
    case Errc::NoLoopContainsOrigin: return "NoLoopContainsOrigin";
    case Errc::BadFrame: return "BadFrame";
    case Errc::SearchExhausted: return "SearchExhausted";
    case Errc::NotFound: return "NotFound";
    case Errc::Unbounded: return "Unbounded";
    case Errc::EmptyInterior: return "EmptyInterior";
    case Errc::DisconnectedSkeleton: return "DisconnectedSkeleton";
    case Errc::DegenerateSpan: return "DegenerateSpan";
    case Errc::PerturbationFailed: return "PerturbationFailed";
    case Errc::WalkFailed: return "WalkFailed";
    case Errc::UnsupportedDimension: return "UnsupportedDimension";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(what), code_(code) {}

void fail(Errc code, const std::string& detail) {
  std::string msg = to_string(code);
  if (!detail.empty()) {
    msg += ": ";
    msg += detail;
  }
  throw Error(code, msg);
}

}  // namespace wbal
