# Copyright (c) 2024 Microsoft Corporation. All rights reserved.
# Licensed under the MIT license. See LICENSE file in the project.
#
import sys

from bifurcation_toolkit.cli.main import main

sys.exit(main())
