#pragma once

#include "dragon/certify.hpp"
#include "dragon/geometry.hpp"
#include "dragon/ifs.hpp"
#include "dragon/intersect.hpp"
#include "dragon/io.hpp"
#include "dragon/regions.hpp"
#include "dragon/render.hpp"
#include "dragon/roots.hpp"
#include "dragon/version.hpp"
