#pragma once

#include <noeth/cofinite.hpp>
#include <noeth/dinh.hpp>
#include <noeth/dynamics.hpp>
#include <noeth/function.hpp>
#include <noeth/generate.hpp>
#include <noeth/io.hpp>
#include <noeth/measure.hpp>
#include <noeth/rational.hpp>
#include <noeth/space.hpp>
#include <noeth/verify.hpp>
