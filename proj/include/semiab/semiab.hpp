#pragma once

#include "verification.hpp"
