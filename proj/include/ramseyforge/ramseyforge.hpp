#pragma once

#include <ramseyforge/amalgamation.hpp>
#include <ramseyforge/arrow.hpp>
#include <ramseyforge/audit.hpp>
#include <ramseyforge/class_spec.hpp>
#include <ramseyforge/classes/catalog.hpp>
#include <ramseyforge/closure.hpp>
#include <ramseyforge/completion.hpp>
#include <ramseyforge/language.hpp>
#include <ramseyforge/lms.hpp>
#include <ramseyforge/morphism.hpp>
#include <ramseyforge/native_format.hpp>
#include <ramseyforge/report.hpp>
#include <ramseyforge/structure.hpp>
