#include "pearl/qh.hpp"
