from polybern2.cli import main

main()
