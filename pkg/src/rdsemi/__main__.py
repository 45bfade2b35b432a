from rdsemi.cli import main

main()
