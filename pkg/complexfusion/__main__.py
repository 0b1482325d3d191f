from complexfusion.cli.main import main

main()
