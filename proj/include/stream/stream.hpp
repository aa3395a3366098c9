//------------------------------------------------------------------------------
//
//   Copyright 2026 The stream-metrics Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#pragma once

#include "stream/distortion.hpp"
#include "stream/error.hpp"
#include "stream/feature_io.hpp"
#include "stream/frechet.hpp"
#include "stream/harness.hpp"
#include "stream/npy.hpp"
#include "stream/pixel.hpp"
#include "stream/powerlaw.hpp"
#include "stream/report.hpp"
#include "stream/spectral.hpp"
#include "stream/stream_s.hpp"
#include "stream/stream_t.hpp"
#include "stream/tensor.hpp"
