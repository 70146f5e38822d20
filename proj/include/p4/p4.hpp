#pragma once

#include "p4/confusion.hpp"
#include "p4/error.hpp"
#include "p4/io.hpp"
#include "p4/metrics.hpp"
#include "p4/render.hpp"
#include "p4/simulate.hpp"
#include "p4/svg.hpp"
#include "p4/sweep.hpp"
