# Copyright 2025-present Contact Spectra Developers.
# Licensed under the Apache License, Version 2.0.
# See http://www.apache.org/licenses/LICENSE-2.0 for details.

import sys

from .cli import main

sys.exit(main())
