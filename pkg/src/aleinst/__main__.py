from aleinst.cli import main

raise SystemExit(main())
