// Copyright 2026 The nhzm Authors
// SPDX-License-Identifier: Apache-2.0

// Umbrella header.

#pragma once

#include <nhzm/bands.hpp>
#include <nhzm/common.hpp>
#include <nhzm/dynamics.hpp>
#include <nhzm/lattice.hpp>
#include <nhzm/localization.hpp>
#include <nhzm/perturbation.hpp>
#include <nhzm/spectral.hpp>
#include <nhzm/version.hpp>
