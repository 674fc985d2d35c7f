// Copyright 2026 The viewclust Authors
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

#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "viewclust/types.h"

namespace viewclust {

// Scene file format (UTF-8 text, '#' starts a comment, fields separated by
// whitespace):
//
//   CAM <id> <fx> <fy> <cx> <cy> <width> <height> \
//       <qw> <qx> <qy> <qz> <tx> <ty> <tz> [sensor] [timestamp]
//   PT  <id> <x> <y> <z> <cam_id>*
//
// The quaternion is world-to-camera, scalar-first; translation is
// world-to-camera. Floating-point values are serialized with 9 significant
// digits. Images are assumed undistorted.

// Malformed line; carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Well-formed file that violates scene-level constraints (duplicate ids,
// dangling track references, no cameras).
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SceneFileReport {
  int camera_count = 0;
  int keypoint_count = 0;
  int dangling_track_refs = 0;
  std::vector<std::string> warnings;
};

Scene ParseScene(std::istream& input);
Scene ParseSceneFile(const std::string& path);

void SerializeScene(const Scene& scene, std::ostream& output);
std::string SerializeSceneToString(const Scene& scene);
void WriteSceneFile(const Scene& scene, const std::string& path);

// Counts entities and invariant violations; warns about cameras that
// observe no keypoint. Never throws.
SceneFileReport ValidateScene(const Scene& scene);

}  // namespace viewclust
