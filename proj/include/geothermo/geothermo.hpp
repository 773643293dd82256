// Copyright 2026 The geothermo Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "geothermo/divergence.hpp"
#include "geothermo/engine.hpp"
#include "geothermo/error.hpp"
#include "geothermo/experiments.hpp"
#include "geothermo/geometry.hpp"
#include "geothermo/models.hpp"
#include "geothermo/serialize.hpp"
#include "geothermo/spectral_core.hpp"
#include "geothermo/thermo.hpp"
