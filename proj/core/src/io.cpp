namespace bifib {}
