// Copyright 2026 The p2v-safety Authors
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

#ifndef P2V__P2V_HPP_
#define P2V__P2V_HPP_

#include "p2v/channel.hpp"
#include "p2v/geo.hpp"
#include "p2v/prediction.hpp"
#include "p2v/psm_codec.hpp"
#include "p2v/render.hpp"
#include "p2v/scenario_io.hpp"
#include "p2v/sim.hpp"
#include "p2v/warning.hpp"

#endif  // P2V__P2V_HPP_
