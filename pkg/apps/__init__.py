# Apps package
