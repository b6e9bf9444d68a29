from bdiv.cli import main

raise SystemExit(main())
