#pragma once

#include "apa/core.hpp"
#include "apa/ctl/formula.hpp"
#include "apa/ctl/model_checker.hpp"
#include "apa/ctl/parser.hpp"
#include "apa/dynamics.hpp"
#include "apa/error.hpp"
#include "apa/semantics.hpp"
