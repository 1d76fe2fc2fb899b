#pragma once

#include "rtenf/errors.hpp"
#include "rtenf/trace.hpp"
#include "rtenf/policy.hpp"
#include "rtenf/enumerate.hpp"
#include "rtenf/analysis.hpp"
#include "rtenf/classifier.hpp"
#include "rtenf/enforcer.hpp"
#include "rtenf/oracle.hpp"
