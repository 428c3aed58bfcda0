// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The trendlet Authors

#pragma once

#include "trendlet/band_lengths.hpp"
#include "trendlet/dwt.hpp"
#include "trendlet/error.hpp"
#include "trendlet/filterbank.hpp"
#include "trendlet/kmeans.hpp"
#include "trendlet/matrix.hpp"
#include "trendlet/pca.hpp"
#include "trendlet/pipeline.hpp"
#include "trendlet/preprocess.hpp"
#include "trendlet/rng.hpp"
