#pragma once

#include "tempocode/config.hpp"
#include "tempocode/core_types.hpp"
#include "tempocode/dense_baseline.hpp"
#include "tempocode/evidence.hpp"
#include "tempocode/experiments.hpp"
#include "tempocode/inference.hpp"
#include "tempocode/latency_decoding.hpp"
#include "tempocode/report_io.hpp"
#include "tempocode/rng.hpp"
#include "tempocode/spike_encoding.hpp"
#include "tempocode/stats.hpp"
#include "tempocode/stdp.hpp"
#include "tempocode/world.hpp"
