// Copyright 2026 The nerkit Authors
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

#ifndef NERKIT_NERKIT_HPP_
#define NERKIT_NERKIT_HPP_

#include "nerkit/corpus.hpp"
#include "nerkit/diagnostics.hpp"
#include "nerkit/errors.hpp"
#include "nerkit/eval.hpp"
#include "nerkit/gazetteer.hpp"
#include "nerkit/linker.hpp"
#include "nerkit/morpho.hpp"
#include "nerkit/noise.hpp"
#include "nerkit/rules.hpp"
#include "nerkit/unicode.hpp"
#include "nerkit/version.hpp"

#endif  // NERKIT_NERKIT_HPP_
