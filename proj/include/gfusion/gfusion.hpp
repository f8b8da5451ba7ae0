#pragma once

#include <gfusion/bases.hpp>
#include <gfusion/error.hpp>
#include <gfusion/frame.hpp>
#include <gfusion/generate.hpp>
#include <gfusion/induced.hpp>
#include <gfusion/linalg.hpp>
#include <gfusion/perturb.hpp>
#include <gfusion/random.hpp>
#include <gfusion/system.hpp>
