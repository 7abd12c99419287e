// Copyright 2026 The clutter-mpc Authors
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

#pragma once

#include <functional>

namespace cmpc {

// Hardware concurrency, capped by the CLUTTER_MPC_THREADS environment
// variable when it is set to a positive integer.
int thread_cap();

// requested > 0 caps at thread_cap(); requested <= 0 means "use the cap".
int resolve_workers(int requested);

// Runs fn(0..n-1) on up to `workers` threads. Work items must not touch
// shared mutable state; the first exception thrown is rethrown after join.
void parallel_for(int n, int workers, const std::function<void(int)>& fn);

}  // namespace cmpc
