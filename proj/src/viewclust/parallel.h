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

#include <functional>

namespace viewclust {

// Number of workers actually used for a requested parallelism level
// (0 = hardware concurrency).
int ResolveWorkerCount(int requested);

// Runs fn(i) for i in [0, count) on a pool of workers. Work items must be
// independent; results must be written to per-index slots so the outcome
// does not depend on scheduling. The first exception thrown by any worker
// is rethrown on the calling thread after the pool drains.
void ParallelFor(int count, int workers, const std::function<void(int)>& fn);

}  // namespace viewclust
