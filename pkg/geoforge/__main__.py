from geoforge.cli.main import main

raise SystemExit(main())
