#include "pearl/symfun.hpp"
