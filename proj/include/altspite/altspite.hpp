// Copyright 2026 The altspite Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "altspite/catalog.hpp"
#include "altspite/equilibrium.hpp"
#include "altspite/game.hpp"
#include "altspite/game_io.hpp"
#include "altspite/lambda_opt.hpp"
#include "altspite/lp.hpp"
#include "altspite/matrix.hpp"
#include "altspite/opponent.hpp"
#include "altspite/pgd.hpp"
#include "altspite/projection.hpp"
#include "altspite/rng.hpp"
#include "altspite/sweep.hpp"
