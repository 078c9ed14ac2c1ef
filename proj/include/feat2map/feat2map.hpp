#pragma once

#include <feat2map/coverage.hpp>
#include <feat2map/errors.hpp>
#include <feat2map/feature.hpp>
#include <feat2map/geometry.hpp>
#include <feat2map/map_io.hpp>
#include <feat2map/map_model.hpp>
#include <feat2map/rng.hpp>
#include <feat2map/synthesis.hpp>
