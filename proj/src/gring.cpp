#include "pearl/gring.hpp"
