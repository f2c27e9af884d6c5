#pragma once

#include "errors.hpp"
#include "rational.hpp"
#include "gamma.hpp"
#include "linalg.hpp"
#include "semigroup.hpp"
#include "words.hpp"
#include "function.hpp"
#include "algebra.hpp"
#include "expression.hpp"
#include "classifier.hpp"
#include "af_builder.hpp"
#include "scaling.hpp"
#include "random_elements.hpp"
#include "properties.hpp"
#include "json_io.hpp"
#include "commands.hpp"
